#pragma once

#include <random>
#include <string>

#include "imexstab/stabfn.hpp"
#include "imexstab/tableau.hpp"

namespace testutil {

inline imexstab::ImexTableau load_fixture(const std::string& name) {
  return imexstab::load_tableau_file(std::string(IMEXSTAB_DATA_DIR) + "/" + name);
}

inline imexstab::ImexTableau euler_pair() { return load_fixture("euler_pair.json"); }
inline imexstab::ImexTableau rk3_explicit() { return load_fixture("rk3_explicit.json"); }
inline imexstab::ImexTableau imex_ssp2() { return load_fixture("imex_ssp2.json"); }
inline imexstab::ImexTableau imex_sdirk3() { return load_fixture("imex_sdirk3_ssp3.json"); }

inline std::mt19937& rng() {
  static std::mt19937 gen(20240811u);
  return gen;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline imexstab::cplx random_point(double half_width = 2.0) {
  return {uniform(-half_width, half_width), uniform(-half_width, half_width)};
}

}  // namespace testutil
