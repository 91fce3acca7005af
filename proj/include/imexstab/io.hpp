#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "imexstab/boundary.hpp"

namespace imexstab {

/// CSV columns: method,theta,rho,re_z2,im_z2,status with
/// re_z2 = -1 + rho cos(theta), im_z2 = rho sin(theta).
/// 17 significant digits, LF line endings, header always present.
void write_csv(std::ostream& out, const std::vector<BoundaryCurve>& curves);

/// Parses CSV produced by write_csv (round-trip exact).
std::vector<BoundaryCurve> read_csv(std::istream& in);

/// Polar boundary plot in the Cartesian z2-plane, one polyline per method,
/// center -1 marked. Presentational only.
void write_svg(std::ostream& out, const std::vector<BoundaryCurve>& curves);

std::string status_name(PointStatus s);

}  // namespace imexstab
