// Benchmark: OpenMP ray sweep vs the serial reference, per fixture and
// method. Usage: bench_rays [samples]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#if defined(_OPENMP)
#include <omp.h>
#endif

#include "imexstab/boundary.hpp"
#include "imexstab/tableau.hpp"

using namespace imexstab;

namespace {

double time_of(const std::function<void()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  const int samples = argc > 1 ? std::atoi(argv[1]) : 256;
#if defined(_OPENMP)
  std::printf("threads: %d, samples: %d\n", omp_get_max_threads(), samples);
#else
  std::printf("threads: 1 (no OpenMP), samples: %d\n", samples);
#endif
  const std::string dir = argc > 2 ? argv[2] : "data";
  for (const char* name : {"euler_pair.json", "imex_ssp2.json", "imex_sdirk3_ssp3.json"}) {
    const StabilityFunction sf = stability_polynomials(load_tableau_file(dir + "/" + name));
    const double root_ser =
        time_of([&] { trace_root_method(sf, samples, 20.0, /*parallel=*/false); });
    const double root_par =
        time_of([&] { trace_root_method(sf, samples, 20.0, /*parallel=*/true); });
    const double def_ser = time_of(
        [&] { trace_definition_method(sf, samples, 20.0, 1e-10, /*parallel=*/false); });
    const double def_par = time_of(
        [&] { trace_definition_method(sf, samples, 20.0, 1e-10, /*parallel=*/true); });
    const double cont = time_of(
        [&] { trace_continuation_method(sf, 2.0 * 3.14159265358979323846 / samples, 20.0); });
    std::printf("%-24s root %.3fs -> %.3fs (x%.2f)  definition %.3fs -> %.3fs (x%.2f)  "
                "continuation %.3fs\n",
                name, root_ser, root_par, root_ser / root_par, def_ser, def_par,
                def_ser / def_par, cont);
  }
  return 0;
}
