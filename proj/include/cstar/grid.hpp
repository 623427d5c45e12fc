#ifndef CSTAR_GRID_HPP
#define CSTAR_GRID_HPP

#include <stdexcept>

#include "cstar/complex_map.hpp"

namespace cstar {

enum class GridMode { kCartesian, kLogPolar };

// Pixel grid over a window of C*.
//
// Cartesian: window [x0,x1] x [y0,y1]; row 0 is the top of the image (y1).
// LogPolar: rows sample rho = log10|z| in [x0,x1] (row 0 = x0, the inner
// ring, proxying 0; the last row proxies infinity); columns sample
// theta in [0,2pi), periodic. y0/y1 are unused in this mode.
struct GridSpec {
  GridMode mode = GridMode::kCartesian;
  double x0 = 0.0, x1 = 0.0;
  double y0 = 0.0, y1 = 0.0;
  int width = 0, height = 0;

  static GridSpec cartesian(double x0, double x1, double y0, double y1,
                            int width, int height) {
    if (!(x1 > x0) || !(y1 > y0) || width <= 0 || height <= 0) {
      throw std::invalid_argument("GridSpec: bad cartesian window");
    }
    return {GridMode::kCartesian, x0, x1, y0, y1, width, height};
  }

  static GridSpec logpolar(double rho0, double rho1, int width, int height) {
    if (!(rho1 > rho0) || width <= 0 || height <= 0) {
      throw std::invalid_argument("GridSpec: bad logpolar window");
    }
    return {GridMode::kLogPolar, rho0, rho1, 0.0, 0.0, width, height};
  }

  double rho10_at(int row) const {
    return x0 + (row + 0.5) * (x1 - x0) / height;
  }
  double theta_at(int col) const {
    return (col + 0.5) * 6.283185307179586476925287 / width;
  }

  // Center of cell (row, col) as a point of C*.
  CPoint cell_center(int row, int col) const;

  // Cell containing z; false when z is outside the window.
  bool cell_of(CPoint z, int* row, int* col) const;

  long cell_count() const { return static_cast<long>(width) * height; }

  bool same_geometry(const GridSpec& o) const {
    return mode == o.mode && x0 == o.x0 && x1 == o.x1 && y0 == o.y0 &&
           y1 == o.y1 && width == o.width && height == o.height;
  }
};

}  // namespace cstar

#endif  // CSTAR_GRID_HPP
