#ifndef CSTAR_RASTER_HPP
#define CSTAR_RASTER_HPP

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cstar/grid.hpp"

namespace cstar {

// Boolean mask over a grid. LogPolar masks are theta-periodic by
// construction (columns wrap); row 0 proxies 0 and the last row proxies
// infinity. Cartesian masks model a piece of the plane (the lift plane).
struct RasterSet {
  GridSpec grid;
  std::vector<std::uint8_t> mask;

  static RasterSet blank(const GridSpec& g) {
    RasterSet r;
    r.grid = g;
    r.mask.assign(g.cell_count(), 0);
    return r;
  }
  std::uint8_t at(int row, int col) const {
    return mask[static_cast<size_t>(row) * grid.width + col];
  }
  void set(int row, int col, bool v = true) {
    mask[static_cast<size_t>(row) * grid.width + col] = v ? 1 : 0;
  }
  long count() const;
  bool operator==(const RasterSet& o) const {
    return grid.same_geometry(o.grid) && mask == o.mask;
  }
};

struct GeometryMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ComponentInfo {
  long size = 0;
  bool touches_row0 = false;      // LogPolar: inner ring (0 proxy)
  bool touches_rowlast = false;   // LogPolar: outer ring (infinity proxy)
  bool touches_col0 = false;      // Cartesian only; always false under wrap
  bool touches_collast = false;

  bool touches_ring() const { return touches_row0 || touches_rowlast; }
  bool touches_border() const {
    return touches_row0 || touches_rowlast || touches_col0 || touches_collast;
  }
  // No contact with the {0, infinity} proxies (LogPolar) or the window
  // border (Cartesian).
  bool interior(const GridSpec& g) const {
    return g.mode == GridMode::kLogPolar ? !touches_ring() : !touches_border();
  }
};

struct ComponentLabeling {
  std::vector<std::int32_t> label;  // -1 where the cell is not in the target
  std::vector<ComponentInfo> comps;

  std::int32_t label_at(const GridSpec& g, int row, int col) const {
    return label[static_cast<size_t>(row) * g.width + col];
  }
};

enum class Target { kSet, kComplement };

// 4-connected labeling with theta wraparound on LogPolar grids; labels are
// assigned in row-major first-seen order.
ComponentLabeling components(const RasterSet& r, Target of);

// T(S): the union of r with every complement component that touches neither
// the 0 proxy nor the infinity proxy (Cartesian: no border). Idempotent.
RasterSet fill_T(const RasterSet& r);

// True iff the complement component containing (row, col) is interior.
// Throws std::domain_error when the cell belongs to r.
bool separates(const RasterSet& r, int row, int col);

struct WebCheck {
  bool is_web = false;
  bool connected = false;
  bool separation_ok = false;
  // Row extents [lo, hi] of the nested domains G'_k (built by hole-filling
  // unions with growing central annuli), emitted on success.
  std::vector<std::array<int, 2>> witness;
};

// C*-spider's-web predicate at raster scale: the set is connected, every
// complement component avoids both boundary rings except for at most one
// containing each ring (and none containing both), and the nested-domain
// construction yields a genuine increasing sequence (a bare circle has
// clean components but separates nothing).
WebCheck is_cstar_spiders_web(const RasterSet& r);

// The three separation conditions on an arbitrary mask, computed by
// genuinely different routes; at raster scale they must agree.
bool witness_exhausts(const RasterSet& r);          // nested-domain growth
bool all_components_interior(const RasterSet& r);   // component flags
bool sampled_points_separated(const RasterSet& r);  // per-cell separation

struct PlaneWebCheck {
  bool is_web = false;
  bool connected = false;
  int rings = 0;  // nested loops found by square growth from the center
};

// Plane (lift-side) spider's-web check: connected, and growing concentric
// squares from the window center yields at least min_rings nested enclosed
// domains before reaching the window border.
PlaneWebCheck plane_spiders_web_check(const RasterSet& cart, int min_rings = 3);

// Lift: LogPolar mask -> Cartesian strip covering `copies` fundamental
// 2 pi strips, sampled at strip cell centers (pull). Strip x is ln|z|.
RasterSet exp_lift(const RasterSet& logpolar, int copies);

// Projection: Cartesian strip mask -> LogPolar, every set strip cell center
// lands in its image cell (push), with 2 pi periodic identification.
RasterSet exp_project(const RasterSet& cart, const GridSpec& target);

// Rotates a LogPolar mask by k columns (used by invariance tests).
RasterSet rotate_theta(const RasterSet& r, int cols);

// PBM (P4) plus a JSON sidecar <path>.grid.json carrying the GridSpec.
void save_raster_pbm(const std::string& path, const RasterSet& r);
RasterSet load_raster_pbm(const std::string& path);

std::string witness_json(const WebCheck& check);

}  // namespace cstar

#endif  // CSTAR_RASTER_HPP
