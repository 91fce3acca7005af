#include "imexstab/io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace imexstab {
namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

PointStatus status_from_name(const std::string& s) {
  if (s == "ok") return PointStatus::Ok;
  if (s == "fallback") return PointStatus::Fallback;
  if (s == "failed") return PointStatus::Failed;
  throw std::runtime_error("CSV: unknown status '" + s + "'");
}

}  // namespace

std::string status_name(PointStatus s) {
  switch (s) {
    case PointStatus::Ok:
      return "ok";
    case PointStatus::Fallback:
      return "fallback";
    case PointStatus::Failed:
      return "failed";
  }
  return "failed";
}

void write_csv(std::ostream& out, const std::vector<BoundaryCurve>& curves) {
  out << "method,theta,rho,re_z2,im_z2,status\n";
  for (const BoundaryCurve& c : curves)
    for (const BoundaryPoint& pt : c.points) {
      const double re = -1.0 + pt.rho * std::cos(pt.theta);
      const double im = pt.rho * std::sin(pt.theta);
      out << c.method << ',' << fmt17(pt.theta) << ',' << fmt17(pt.rho) << ',' << fmt17(re)
          << ',' << fmt17(im) << ',' << status_name(pt.status) << '\n';
    }
}

std::vector<BoundaryCurve> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "method,theta,rho,re_z2,im_z2,status")
    throw std::runtime_error("CSV: missing or unexpected header");
  std::vector<BoundaryCurve> curves;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string method, theta, rho, re, im, status;
    if (!std::getline(row, method, ',') || !std::getline(row, theta, ',') ||
        !std::getline(row, rho, ',') || !std::getline(row, re, ',') ||
        !std::getline(row, im, ',') || !std::getline(row, status))
      throw std::runtime_error("CSV: malformed row: " + line);
    if (curves.empty() || curves.back().method != method) {
      curves.push_back(BoundaryCurve{method, {}});
    }
    BoundaryPoint pt;
    pt.theta = std::strtod(theta.c_str(), nullptr);
    pt.rho = std::strtod(rho.c_str(), nullptr);
    pt.status = status_from_name(status);
    curves.back().points.push_back(pt);
  }
  return curves;
}

void write_svg(std::ostream& out, const std::vector<BoundaryCurve>& curves) {
  // Bounding box over plottable points in the z2-plane, center included.
  double xmin = -1.0, xmax = -1.0, ymin = 0.0, ymax = 0.0;
  for (const BoundaryCurve& c : curves)
    for (const BoundaryPoint& pt : c.points) {
      if (pt.status == PointStatus::Failed || !std::isfinite(pt.rho)) continue;
      const double x = -1.0 + pt.rho * std::cos(pt.theta);
      const double y = pt.rho * std::sin(pt.theta);
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  const double span = std::max({xmax - xmin, ymax - ymin, 1e-6});
  const double margin = 0.08 * span;
  const double x0 = 0.5 * (xmin + xmax) - 0.5 * span - margin;
  const double y0 = 0.5 * (ymin + ymax) - 0.5 * span - margin;
  const double scale = 800.0 / (span + 2.0 * margin);
  auto px = [&](double x) { return (x - x0) * scale; };
  auto py = [&](double y) { return 800.0 - (y - y0) * scale; };

  static const std::map<std::string, std::string> colors = {
      {"root", "#1f6fb2"}, {"definition", "#222222"}, {"continuation", "#c0392b"}};

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 800\">\n";
  out << "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
  // axes through z2 = 0
  out << "<line x1=\"" << px(x0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(x0 + 2 * span)
      << "\" y2=\"" << py(0) << "\" stroke=\"#cccccc\"/>\n";
  out << "<line x1=\"" << px(0) << "\" y1=\"" << py(y0) << "\" x2=\"" << px(0) << "\" y2=\""
      << py(y0 + 2 * span) << "\" stroke=\"#cccccc\"/>\n";
  for (const BoundaryCurve& c : curves) {
    const auto it = colors.find(c.method);
    const std::string color = it == colors.end() ? "#555555" : it->second;
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (const BoundaryPoint& pt : c.points) {
      if (pt.status == PointStatus::Failed || !std::isfinite(pt.rho)) continue;
      const double x = -1.0 + pt.rho * std::cos(pt.theta);
      const double y = pt.rho * std::sin(pt.theta);
      out << px(x) << ',' << py(y) << ' ';
    }
    out << "\"/>\n";
    out << "<text x=\"20\" y=\"" << 30 + 22 * (&c - curves.data()) << "\" fill=\"" << color
        << "\" font-family=\"sans-serif\" font-size=\"16\">" << c.method << "</text>\n";
  }
  // center z2 = -1
  out << "<circle cx=\"" << px(-1.0) << "\" cy=\"" << py(0.0)
      << "\" r=\"4\" fill=\"#333333\"/>\n";
  out << "</svg>\n";
}

}  // namespace imexstab
