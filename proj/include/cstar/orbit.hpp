#ifndef CSTAR_ORBIT_HPP
#define CSTAR_ORBIT_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "cstar/complex_map.hpp"
#include "cstar/grid.hpp"
#include "cstar/image_io.hpp"
#include "cstar/raster.hpp"

namespace cstar {

// Per-step membership flags. Step n satisfies:
//   kBig   iff |f^n(z)| >= n/2
//   kSmall iff |f^n(z)| <= 2/n          (n >= 1)
//   kH2    iff Re f^{n+2}(z) >= 2
enum StepCond : unsigned {
  kCondNone = 0,
  kCondBig = 1,
  kCondSmall = 2,
  kCondH2 = 4,
};

struct OrbitStep {
  double log_modulus = 0.0;  // ln|f^n(z)|, clamped to +-1e300, always finite
  unsigned conditions = kCondNone;  // flags above; step 0 carries none
  bool in_H = false;                // Re f^n(z) >= 2 where recoverable
};

enum class OrbitClass {
  kAbsorbed,               // entered H and verifiably stayed there
  kInIHorizon,             // the I-condition held for all 1 <= n <= horizon
  kEscapingUnclassified,   // left the double range without either of the above
  kBoundedOrUnknown,       // budget exhausted at moderate modulus
};

struct OrbitRecord {
  std::vector<OrbitStep> steps;        // index n = 0..budget_used
  std::optional<int> first_H_entry;
  OrbitClass classification = OrbitClass::kBoundedOrUnknown;
  int budget_used = 0;
};

// Iterates the map with overflow-safe bookkeeping: once |f^n| leaves
// [1e-300, 1e300] the orbit continues in log coordinates through the lift,
// and beyond log-modulus 1e300 only the modulus sign is tracked (the
// BIG/SMALL conditions dominate every horizon there). Re f^n for the H test
// is recovered only while representable; otherwise the H2 condition
// evaluates false and BIG/SMALL carry the classification.
//
// Preconditions: z != 0 (DomainError) and budget >= horizon + 2.
OrbitRecord classify_orbit(const PointMap& map, CPoint z, int budget,
                           int horizon);
OrbitRecord classify_orbit(const MapParams& params, CPoint z, int budget,
                           int horizon);

// Least n <= budget with Re f^n(z) >= 2, if any.
std::optional<int> first_entry_time(const PointMap& map, CPoint z, int budget);
std::optional<int> first_entry_time(const MapParams& params, CPoint z,
                                    int budget);

// True iff the I-condition holds for all 1 <= n <= horizon (iterating
// horizon + 2 steps).
bool in_i_horizon(const PointMap& map, CPoint z, int horizon);

// Smallest-entry-time layer of Figure-1 type: pixel centers coloured by
// first_entry_time, 16 shades of red cycling with n, gray when the orbit
// never enters H within the budget, dark blue for invalid pixels (z = 0).
Image render_h_entry(const MapParams& params, const GridSpec& grid, int budget,
                     int threads = 0);

// Raster marking pixels whose center is NOT in I_horizon.
RasterSet render_i_complement(const MapParams& params, const GridSpec& grid,
                              int horizon, int threads = 0);

// Palette used by render_h_entry.
void entry_time_color(std::optional<int> entry, std::uint8_t* rgb);

}  // namespace cstar

#endif  // CSTAR_ORBIT_HPP
