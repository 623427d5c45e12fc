#include "cstar/grid.hpp"

#include <cmath>

namespace cstar {

namespace {
constexpr double kTwoPi = 6.283185307179586476925287;
}

CPoint GridSpec::cell_center(int row, int col) const {
  if (mode == GridMode::kCartesian) {
    const double x = x0 + (col + 0.5) * (x1 - x0) / width;
    const double y = y1 - (row + 0.5) * (y1 - y0) / height;
    return {x, y};
  }
  const double r = std::pow(10.0, rho10_at(row));
  const double th = theta_at(col);
  return {r * std::cos(th), r * std::sin(th)};
}

bool GridSpec::cell_of(CPoint z, int* row, int* col) const {
  if (mode == GridMode::kCartesian) {
    const double fx = (z.x - x0) / (x1 - x0) * width;
    const double fy = (y1 - z.y) / (y1 - y0) * height;
    if (fx < 0.0 || fy < 0.0 || fx >= width || fy >= height) return false;
    *col = static_cast<int>(fx);
    *row = static_cast<int>(fy);
    return true;
  }
  const double r2 = z.x * z.x + z.y * z.y;
  if (r2 <= 0.0) return false;
  const double rho10 = 0.5 * std::log10(r2);
  const double fr = (rho10 - x0) / (x1 - x0) * height;
  if (fr < 0.0 || fr >= height) return false;
  double th = std::atan2(z.y, z.x);
  if (th < 0.0) th += kTwoPi;
  int c = static_cast<int>(th / kTwoPi * width);
  if (c >= width) c = width - 1;
  *row = static_cast<int>(fr);
  *col = c;
  return true;
}

}  // namespace cstar
