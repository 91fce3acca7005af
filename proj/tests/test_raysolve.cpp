#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "imexstab/raysolve.hpp"

using namespace imexstab;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent oracle: bisection on |P(-1 + rho e^{i theta})| = 1 for the
// explicit RK3 stability polynomial P(z) = 1 + z + z^2/2 + z^3/6.
double rk3_bisect_rho(double theta) {
  auto inside = [&](double rho) {
    const cplx z = cplx(-1.0, 0.0) + rho * std::polar(1.0, theta);
    const cplx p = 1.0 + z + z * z / 2.0 + z * z * z / 6.0;
    return std::abs(p) <= 1.0;
  };
  double lo = 0.0, hi = 4.0;
  while (inside(hi)) hi += 1.0;
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    (inside(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Oracle for real_roots: sign-change bisection on a fine grid.
std::vector<double> bisection_roots(const UniPoly& u, double lo, double hi) {
  std::vector<double> roots;
  const int n = 20000;
  double prev = u(lo);
  for (int i = 1; i <= n; ++i) {
    const double x = lo + (hi - lo) * i / n;
    const double v = u(x);
    if (prev == 0.0) roots.push_back(lo + (hi - lo) * (i - 1) / n);
    if (prev * v < 0.0) {
      double a = lo + (hi - lo) * (i - 1) / n, b = x;
      for (int k = 0; k < 100; ++k) {
        const double m = 0.5 * (a + b);
        (u(a) * u(m) <= 0.0 ? b : a) = m;
      }
      roots.push_back(0.5 * (a + b));
    }
    prev = v;
  }
  return roots;
}

RaySystem make_system(double theta, Eigen::MatrixXd f_coeffs) {
  RaySystem rs;
  rs.theta = theta;
  rs.F = BiPoly(std::move(f_coeffs));
  rs.G = rs.F.derivative_x();
  rs.coeff_scale = rs.F.max_abs_coeff();
  return rs;
}

}  // namespace

TEST_CASE("Euler pair ray system: F = 1 + y^2 - rho^2, G = 2y") {
  const StabilityFunction sf = stability_polynomials(testutil::euler_pair());
  const RaySystem rs = build_ray_system(sf, kPi / 3.0);
  CHECK(rs.F.coeff(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rs.F.coeff(2, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rs.F.coeff(0, 2) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(std::abs(rs.F.coeff(1, 0)) <= 1e-14);
  CHECK(std::abs(rs.F.coeff(0, 1)) <= 1e-14);
  CHECK(rs.G.degree_x() == 1);
  CHECK(rs.G(1.0, 0.0) == doctest::Approx(2.0));
}

TEST_CASE("Euler pair: F is independent of theta") {
  const StabilityFunction sf = stability_polynomials(testutil::euler_pair());
  const RaySystem a = build_ray_system(sf, 0.7);
  const RaySystem b = build_ray_system(sf, 1.9);
  for (int j = 0; j <= 2; ++j)
    for (int k = 0; k <= 2; ++k)
      CHECK(std::abs(a.F.coeff(j, k) - b.F.coeff(j, k)) <= 1e-14);
}

TEST_CASE("explicit-only RK3: F constant in y") {
  const StabilityFunction sf = stability_polynomials(testutil::rk3_explicit());
  const RaySystem rs = build_ray_system(sf, 1.2);
  CHECK(rs.F.degree_x() == 0);
  CHECK(rs.G.max_abs_coeff() == 0.0);
}

TEST_CASE("construction identity at 50 random (y, rho, theta) triples") {
  for (const char* name : {"euler_pair.json", "imex_ssp2.json", "imex_sdirk3_ssp3.json"}) {
    const StabilityFunction sf = stability_polynomials(testutil::load_fixture(name));
    for (int i = 0; i < 50; ++i) {
      const double y = testutil::uniform(-3, 3);
      const double rho = testutil::uniform(0, 3);
      const double theta = testutil::uniform(0, 2 * kPi);
      const RaySystem rs = build_ray_system(sf, theta);
      const cplx z2 = cplx(-1.0, 0.0) + rho * std::polar(1.0, theta);
      const cplx iy(0.0, y);
      const double direct = std::norm(sf.q(iy)) - std::norm(sf.p(iy, z2));
      CHECK(std::abs(rs.F(y, rho) - direct) <= 1e-10 * (1.0 + std::abs(direct)));
    }
  }
}

TEST_CASE("real_roots on factored forms") {
  CHECK(real_roots(UniPoly({-1, 0, 1})) == std::vector<double>{-1.0, 1.0});
  CHECK(real_roots(UniPoly({1, 0, 1})).empty());
  const auto r = real_roots(UniPoly({2, -1, -2, 1}));  // (y-1)(y+1)(y-2)
  REQUIRE(r.size() == 3);
  CHECK(r[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(r[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r[2] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_THROWS_AS(real_roots(UniPoly::zero()), NumericalError);
  CHECK(real_roots(UniPoly({5.0})).empty());
}

TEST_CASE("real_roots agrees with the bisection oracle on random polynomials") {
  for (int trial = 0; trial < 100; ++trial) {
    // Random degree <= 6 polynomial with well-separated roots.
    const int deg = 2 + static_cast<int>(testutil::uniform(0, 4.999));
    std::vector<double> roots;
    double x = testutil::uniform(-6, -4);
    for (int i = 0; i < deg; ++i) {
      roots.push_back(x);
      x += testutil::uniform(0.8, 2.5);
    }
    std::vector<double> coeffs{1.0};
    for (double r : roots) {
      std::vector<double> next(coeffs.size() + 1, 0.0);
      for (size_t k = 0; k < coeffs.size(); ++k) {
        next[k + 1] += coeffs[k];
        next[k] -= r * coeffs[k];
      }
      coeffs = std::move(next);
    }
    const UniPoly u(coeffs);
    const auto got = real_roots(u);
    const auto want = bisection_roots(u, -8.0, 8.0);
    REQUIRE(got.size() == want.size());
    for (size_t i = 0; i < got.size(); ++i)
      CHECK(std::abs(got[i] - want[i]) <= 1e-9 * (1.0 + std::abs(want[i])));
  }
}

TEST_CASE("Euler resultant is 4(1 - rho^2)") {
  const StabilityFunction sf = stability_polynomials(testutil::euler_pair());
  const RaySystem rs = build_ray_system(sf, 0.9);
  const UniPoly res = resultant_in_rho(rs, 10.0);
  for (double rho : {0.0, 0.5, 1.0, 2.0, 7.5})
    CHECK(res(rho) == doctest::Approx(4.0 * (1.0 - rho * rho)).epsilon(1e-8));
}

TEST_CASE("resultant of F = y^2 - rho, G = 2y is proportional to rho") {
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(3, 2);
  c(2, 0) = 1.0;   // y^2
  c(0, 1) = -1.0;  // -rho
  const RaySystem rs = make_system(0.0, c);
  const UniPoly res = resultant_in_rho(rs, 4.0);
  CHECK(std::abs(res(0.0)) <= 1e-10 * rs.coeff_scale);
  const double k = res(1.0);
  CHECK(std::abs(k) > 1e-10);
  CHECK(res(2.0) == doctest::Approx(2.0 * k).epsilon(1e-8));
}

TEST_CASE("perfect square in y gives an identically-zero resultant") {
  // F = (y - rho)^2 = y^2 - 2 rho y + rho^2 shares (y - rho) with dF/dy.
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(3, 3);
  c(2, 0) = 1.0;
  c(1, 1) = -2.0;
  c(0, 2) = 1.0;
  CHECK_THROWS_AS(resultant_in_rho(make_system(0.0, c), 4.0), ZeroResultant);
}

TEST_CASE("Euler pair smallest root: rho = 1 with witness y = 0") {
  const StabilityFunction sf = stability_polynomials(testutil::euler_pair());
  for (double theta : {0.0, 0.4, kPi / 2, kPi, 5.1}) {
    const RayRoot r = smallest_valid_root(build_ray_system(sf, theta), 10.0);
    CHECK(r.rho == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(r.y_witness) <= 1e-7);
  }
}

TEST_CASE("explicit RK3 smallest root along the real axis") {
  const StabilityFunction sf = stability_polynomials(testutil::rk3_explicit());
  const RayRoot back = smallest_valid_root(build_ray_system(sf, kPi), 10.0);
  CHECK(back.rho == doctest::Approx(rk3_bisect_rho(kPi)).epsilon(1e-9));
  CHECK(back.rho == doctest::Approx(1.5127453266183290).epsilon(1e-9));
  const RayRoot fwd = smallest_valid_root(build_ray_system(sf, 0.0), 10.0);
  CHECK(fwd.rho == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("min_f_over_y on the Euler pair") {
  const StabilityFunction sf = stability_polynomials(testutil::euler_pair());
  const RaySystem rs = build_ray_system(sf, 0.3);
  auto [v1, y1] = min_f_over_y(rs, 0.5);
  CHECK(v1 == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(std::abs(y1) <= 1e-9);
  CHECK(min_f_over_y(rs, 1.0).first == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(min_f_over_y(rs, 2.0).first == doctest::Approx(-3.0).epsilon(1e-12));
}

TEST_CASE("symmetry: rho(theta) = rho(2 pi - theta)") {
  for (const char* name : {"euler_pair.json", "rk3_explicit.json", "imex_ssp2.json",
                           "imex_sdirk3_ssp3.json"}) {
    const StabilityFunction sf = stability_polynomials(testutil::load_fixture(name));
    for (double theta : {0.3, 1.1, 2.0, 2.9}) {
      const RayRoot a = solve_ray(sf, theta, 20.0);
      const RayRoot b = solve_ray(sf, 2 * kPi - theta, 20.0);
      CHECK(std::abs(a.rho - b.rho) <= 1e-8 * (1.0 + a.rho));
    }
  }
}

TEST_CASE("returned root is the first touching point on the ray") {
  for (const char* name : {"euler_pair.json", "imex_ssp2.json", "imex_sdirk3_ssp3.json"}) {
    const StabilityFunction sf = stability_polynomials(testutil::load_fixture(name));
    for (double theta : {0.0, 0.9, 2.2, 4.0}) {
      const RaySystem rs = build_ray_system(sf, theta);
      const RayRoot r = smallest_valid_root(rs, 20.0);
      for (double delta : {1e-3, 1e-2})
        CHECK(min_f_over_y(rs, r.rho * (1.0 - delta)).first > 0.0);
      CHECK(min_f_over_y(rs, r.rho).first <= 1e-8 * rs.coeff_scale);
    }
  }
}

TEST_CASE("rho cap below the boundary yields NoRootOnRay") {
  const StabilityFunction sf = stability_polynomials(testutil::euler_pair());
  CHECK_THROWS_AS(smallest_valid_root(build_ray_system(sf, 1.0), 0.5), NoRootOnRay);
}

TEST_CASE("center outside S yields InteriorViolation") {
  // p = 1 - z2: |p(-1)| = 2 > 1 at the center.
  const ImexTableau t =
      parse_tableau(R"({"s":1,"A":[[0]],"w":[0],"B":[[0]],"omega":[-1]})");
  const StabilityFunction sf = stability_polynomials(t);
  CHECK_THROWS_AS(smallest_valid_root(build_ray_system(sf, 0.5), 10.0), InteriorViolation);
}

TEST_CASE("unbounded F in y yields NotLStableAtInfinity") {
  // w = [2] makes deg_z1 p = deg q with |R(inf, .)| growing in y terms:
  // F = 1 - 2 y rho sin(theta) - rho^2 is odd in y on this ray.
  const ImexTableau t =
      parse_tableau(R"({"s":1,"A":[[1]],"w":[2],"B":[[0]],"omega":[1]})");
  const StabilityFunction sf = stability_polynomials(t);
  CHECK_THROWS_AS(smallest_valid_root(build_ray_system(sf, kPi / 2), 10.0),
                  NotLStableAtInfinity);
}

TEST_CASE("residuals at the witness are small") {
  const StabilityFunction sf = stability_polynomials(testutil::imex_sdirk3());
  for (double theta : {0.2, 1.7, 3.3, 5.6}) {
    const RaySystem rs = build_ray_system(sf, theta);
    const RayRoot r = smallest_valid_root(rs, 20.0);
    CHECK(r.f_residual <= 1e-8 * rs.coeff_scale);
    CHECK(r.g_residual <= 1e-8 * rs.coeff_scale);
  }
}
