#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "imexstab/boundary.hpp"
#include "imexstab/io.hpp"
#include "imexstab/stabfn.hpp"
#include "imexstab/tableau.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInvalidInput = 2;
constexpr int kExitNumerical = 3;

imexstab::ImexTableau load_or_exit(const std::string& path) {
  const imexstab::ImexTableau t = imexstab::load_tableau_file(path);
  for (const auto& d : imexstab::validate(t))
    if (d.severity == imexstab::Severity::Error)
      throw imexstab::TableauError(d.message);
  return t;
}

int run_check(const std::string& path) {
  const imexstab::ImexTableau t = imexstab::load_tableau_file(path);
  const auto diags = imexstab::validate(t);
  bool has_error = false;
  for (const auto& d : diags) {
    const bool err = d.severity == imexstab::Severity::Error;
    has_error = has_error || err;
    std::cout << (err ? "ERROR: " : "WARNING: ") << d.message << "\n";
  }
  if (diags.empty()) std::cout << "ok: " << (t.name.empty() ? path : t.name) << "\n";
  return has_error ? kExitInvalidInput : kExitOk;
}

int run_stabfn(const std::string& path) {
  const imexstab::ImexTableau t = load_or_exit(path);
  const imexstab::StabilityFunction sf = imexstab::stability_polynomials(t);
  std::printf("p coefficients (rows: z1 powers, columns: z2 powers)\n");
  for (int j = 0; j <= sf.p.degree_x(); ++j) {
    for (int k = 0; k <= sf.p.degree_y(); ++k)
      std::printf("%s%.17g", k ? " " : "", sf.p.coeff(j, k));
    std::printf("\n");
  }
  std::printf("q coefficients (ascending z1 powers)\n");
  for (int k = 0; k <= sf.q.degree(); ++k)
    std::printf("%s%.17g", k ? " " : "", sf.q.coeff(k));
  std::printf("\n");
  return kExitOk;
}

struct BoundaryOpts {
  std::string tableau;
  std::string method = "root";
  int samples = 256;
  double rho_max = 20.0;
  double tol = 1e-10;
  std::string out_csv;
  std::string out_svg;
};

void print_summary(const imexstab::BoundaryCurve& c) {
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  int failed = 0;
  for (const auto& pt : c.points) {
    if (pt.status == imexstab::PointStatus::Failed) {
      ++failed;
      continue;
    }
    lo = std::min(lo, pt.rho);
    hi = std::max(hi, pt.rho);
  }
  std::printf("%-13s rays=%zu min_rho=%.12g max_rho=%.12g failed=%d\n", c.method.c_str(),
              c.points.size(), lo, hi, failed);
}

int run_boundary(const BoundaryOpts& opt) {
  const imexstab::ImexTableau t = load_or_exit(opt.tableau);
  const imexstab::StabilityFunction sf = imexstab::stability_polynomials(t);
  const double theta_step = 2.0 * std::numbers::pi / opt.samples;

  std::vector<imexstab::BoundaryCurve> curves;
  if (opt.method == "root" || opt.method == "all")
    curves.push_back(imexstab::trace_root_method(sf, opt.samples, opt.rho_max));
  if (opt.method == "definition" || opt.method == "all")
    curves.push_back(
        imexstab::trace_definition_method(sf, opt.samples, opt.rho_max, opt.tol));
  if (opt.method == "continuation" || opt.method == "all")
    curves.push_back(imexstab::trace_continuation_method(sf, theta_step, opt.rho_max));

  int failed = 0;
  for (const auto& c : curves) {
    print_summary(c);
    for (const auto& pt : c.points)
      if (pt.status == imexstab::PointStatus::Failed) ++failed;
  }

  if (!opt.out_csv.empty()) {
    std::ofstream out(opt.out_csv, std::ios::binary);
    if (!out) {
      std::cerr << "cannot open output file: " << opt.out_csv << "\n";
      return kExitInvalidInput;
    }
    imexstab::write_csv(out, curves);
  }
  if (!opt.out_svg.empty()) {
    std::ofstream out(opt.out_svg, std::ios::binary);
    if (!out) {
      std::cerr << "cannot open output file: " << opt.out_svg << "\n";
      return kExitInvalidInput;
    }
    imexstab::write_svg(out, curves);
  }
  return failed == 0 ? kExitOk : kExitNumerical;
}

int run_area(const std::string& path, int samples, double rho_max) {
  const imexstab::ImexTableau t = load_or_exit(path);
  const imexstab::StabilityFunction sf = imexstab::stability_polynomials(t);
  const imexstab::BoundaryCurve curve = imexstab::trace_root_method(sf, samples, rho_max);
  for (const auto& pt : curve.points)
    if (pt.status == imexstab::PointStatus::Failed) {
      std::cerr << "area: ray theta=" << pt.theta << " failed\n";
      return kExitNumerical;
    }
  std::printf("area = %.12g\n", imexstab::area(curve));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"L-stable region boundary of an IMEX Runge-Kutta scheme"};
  app.require_subcommand(1);

  std::string check_path;
  auto* check = app.add_subcommand("check", "validate a tableau file");
  check->add_option("--tableau", check_path, "tableau JSON file")->required();

  std::string stabfn_path;
  auto* stabfn = app.add_subcommand("stabfn", "print stability-function coefficients");
  stabfn->add_option("--tableau", stabfn_path, "tableau JSON file")->required();

  BoundaryOpts bopt;
  auto* boundary = app.add_subcommand("boundary", "trace the region boundary");
  boundary->add_option("--tableau", bopt.tableau, "tableau JSON file")->required();
  boundary->add_option("--method", bopt.method, "root|definition|continuation|all")
      ->check(CLI::IsMember({"root", "definition", "continuation", "all"}));
  boundary->add_option("--samples", bopt.samples, "theta samples")->check(CLI::Range(4, 1 << 20));
  boundary->add_option("--rho-max", bopt.rho_max, "radius cap")->check(CLI::PositiveNumber);
  boundary->add_option("--tol", bopt.tol, "definition-method bisection tolerance")
      ->check(CLI::PositiveNumber);
  boundary->add_option("--out", bopt.out_csv, "output CSV path");
  boundary->add_option("--svg", bopt.out_svg, "output SVG path");

  std::string area_path;
  int area_samples = 256;
  double area_rho_max = 20.0;
  auto* area_cmd = app.add_subcommand("area", "region area via the root method");
  area_cmd->add_option("--tableau", area_path, "tableau JSON file")->required();
  area_cmd->add_option("--samples", area_samples, "theta samples")->check(CLI::Range(4, 1 << 20));
  area_cmd->add_option("--rho-max", area_rho_max, "radius cap")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (check->parsed()) return run_check(check_path);
    if (stabfn->parsed()) return run_stabfn(stabfn_path);
    if (boundary->parsed()) return run_boundary(bopt);
    if (area_cmd->parsed()) return run_area(area_path, area_samples, area_rho_max);
  } catch (const imexstab::TableauError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const imexstab::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
