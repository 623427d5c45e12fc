#ifndef CSTAR_FIXTURES_HPP
#define CSTAR_FIXTURES_HPP

#include <cstdint>
#include <string>

#include "cstar/raster.hpp"
#include "cstar/verify.hpp"

namespace cstar::fixtures {

struct UnknownFixture : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// n full rings joined by one radial spoke; the canonical C*-web.
RasterSet circles_with_spoke(int n, int px = 256);

// The same rings without the spoke (disconnected, not a web).
RasterSet concentric_circles(int n, int px = 256);

RasterSet single_circle(int px = 256);

// Nested square boundaries S_{R k} (R > 2 pi) joined along the positive
// real axis, drawn in the lift plane; its exp-projection is a C*-web.
RasterSet plane_squares_web(int squares = 3, double r1 = 7.0, int px = 2048);

// Structured-random logpolar mask for the separation-equivalence property:
// rings, spokes, blobs, optional ring coverage and punched gaps.
RasterSet random_topology_fixture(std::uint64_t seed, int px = 96);

// Random mask for round-trip checks.
RasterSet random_logpolar_mask(std::uint64_t seed, int px = 64);

// By-name lookup for the CLI: circles-with-spoke, concentric-circles,
// single-circle, plane-squares-web, random.
RasterSet by_name(const std::string& name, int n, int px, std::uint64_t seed);

// Constant chain of N+1 copies of a plane box around a point.
BoxChain constant_box_chain(CPoint center, double half, int n);

// Log boxes of half-width log_half around f^k(z0), k = 0..n.
BoxChain orbit_box_chain(const MapParams& params, CPoint z0, int n,
                         double log_half);

}  // namespace cstar::fixtures

#endif  // CSTAR_FIXTURES_HPP
