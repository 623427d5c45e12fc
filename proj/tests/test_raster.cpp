#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "cstar/fixtures.hpp"
#include "cstar/raster.hpp"

using namespace cstar;

namespace {

RasterSet blank_lp(int px) {
  return RasterSet::blank(GridSpec::logpolar(-2.0, 2.0, px, px));
}

}  // namespace

TEST_CASE("components: full annulus, disjoint rings, wraparound") {
  RasterSet full = blank_lp(32);
  for (auto& c : full.mask) c = 1;
  const ComponentLabeling l1 = components(full, Target::kSet);
  REQUIRE(l1.comps.size() == 1);
  CHECK(l1.comps[0].touches_row0);
  CHECK(l1.comps[0].touches_rowlast);

  RasterSet rings = blank_lp(32);
  for (int c = 0; c < 32; ++c) {
    rings.set(10, c, true);
    rings.set(20, c, true);
  }
  const ComponentLabeling l2 = components(rings, Target::kSet);
  REQUIRE(l2.comps.size() == 2);
  CHECK(!l2.comps[0].touches_ring());
  CHECK(!l2.comps[1].touches_ring());

  // A blob crossing the theta seam is one component.
  RasterSet seam = blank_lp(32);
  seam.set(16, 31, true);
  seam.set(16, 0, true);
  const ComponentLabeling l3 = components(seam, Target::kSet);
  CHECK(l3.comps.size() == 1);
}

TEST_CASE("fill_T on circles") {
  // One circle: both complement components reach a ring; nothing filled.
  RasterSet one = fixtures::single_circle(64);
  CHECK(fill_T(one) == one);

  // Two circles: the region between them is appended.
  RasterSet two = fixtures::concentric_circles(2, 64);
  const RasterSet filled = fill_T(two);
  const int lo = 8, hi = 51;  // fixture rows for n=2 (0.12, 0.80)
  REQUIRE(two.at(lo, 0));
  REQUIRE(two.at(hi, 0));
  for (int row = lo; row <= hi; ++row) {
    for (int col = 0; col < 64; ++col) REQUIRE(filled.at(row, col));
  }
  CHECK(!filled.at(lo - 1, 0));
  CHECK(!filled.at(hi + 1, 0));

  // Idempotence.
  CHECK(fill_T(filled) == filled);
}

TEST_CASE("fill_T is idempotent on random masks") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const RasterSet r = fixtures::random_topology_fixture(seed, 48);
    const RasterSet once = fill_T(r);
    CHECK(fill_T(once) == once);
    // Monotone: the fill only adds cells.
    for (size_t i = 0; i < r.mask.size(); ++i) {
      if (r.mask[i]) REQUIRE(once.mask[i]);
    }
  }
}

TEST_CASE("separates") {
  RasterSet two = fixtures::concentric_circles(2, 64);
  CHECK(separates(two, 30, 5));    // between the circles
  CHECK(!separates(two, 2, 5));    // inside: component reaches the 0 ring
  CHECK(!separates(two, 60, 5));   // outside
  CHECK_THROWS_AS(separates(two, 8, 5), std::domain_error);  // on the set

  // separates(r,p) => p in fill_T(r) or separates(fill_T(r), p).
  const RasterSet filled = fill_T(two);
  CHECK(filled.at(30, 5));
}

TEST_CASE("separation survives hole filling or is swallowed by it") {
  // separates(r, p) implies p lands in fill_T(r) or stays separated.
  for (std::uint64_t seed = 21; seed <= 30; ++seed) {
    const RasterSet r = fixtures::random_topology_fixture(seed, 64);
    const RasterSet filled = fill_T(r);
    for (int row = 1; row < 63; row += 3) {
      for (int col = 0; col < 64; col += 3) {
        if (r.at(row, col)) continue;
        if (!separates(r, row, col)) continue;
        const bool ok = filled.at(row, col) || separates(filled, row, col);
        REQUIRE(ok);
      }
    }
  }
}

TEST_CASE("C*-spider's-web predicate on the canonical fixtures") {
  const WebCheck web = is_cstar_spiders_web(fixtures::circles_with_spoke(5, 256));
  CHECK(web.is_web);
  CHECK(web.connected);
  CHECK(web.separation_ok);
  CHECK(web.witness.size() >= 4);
  // Nested witness domains.
  for (size_t i = 1; i < web.witness.size(); ++i) {
    CHECK(web.witness[i][0] <= web.witness[i - 1][0]);
    CHECK(web.witness[i][1] >= web.witness[i - 1][1]);
  }

  const WebCheck nospoke = is_cstar_spiders_web(fixtures::concentric_circles(5, 256));
  CHECK(!nospoke.is_web);
  CHECK(!nospoke.connected);

  const WebCheck circle = is_cstar_spiders_web(fixtures::single_circle(256));
  CHECK(!circle.is_web);
}

TEST_CASE("web predicate is invariant under theta rotation") {
  const RasterSet base = fixtures::circles_with_spoke(4, 128);
  std::mt19937_64 rng(2718);
  for (int i = 0; i < 8; ++i) {
    const int shift = static_cast<int>(rng() % 128);
    const WebCheck rot = is_cstar_spiders_web(rotate_theta(base, shift));
    REQUIRE(rot.is_web);
  }
  const RasterSet broken = fixtures::concentric_circles(4, 128);
  for (int i = 0; i < 4; ++i) {
    const int shift = static_cast<int>(rng() % 128);
    REQUIRE(!is_cstar_spiders_web(rotate_theta(broken, shift)).is_web);
  }
}

TEST_CASE("the three separation conditions agree on random fixtures") {
  int webs = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const RasterSet r = fixtures::random_topology_fixture(seed, 96);
    const bool a = witness_exhausts(r);
    const bool b = all_components_interior(r);
    const bool c = sampled_points_separated(r);
    REQUIRE(a == b);
    REQUIRE(b == c);
    webs += b ? 1 : 0;
  }
  // The generator produces a genuine mix.
  CHECK(webs > 5);
  CHECK(webs < 45);
}

TEST_CASE("exp lift and projection") {
  // Lift of the full annulus is the full strip.
  RasterSet full = blank_lp(24);
  for (auto& c : full.mask) c = 1;
  const RasterSet strip = exp_lift(full, 2);
  CHECK(strip.grid.mode == GridMode::kCartesian);
  CHECK(strip.count() == strip.grid.cell_count());

  // Round trip is the identity on random masks.
  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    const RasterSet r = fixtures::random_logpolar_mask(seed, 64);
    for (int copies : {1, 3}) {
      const RasterSet lifted = exp_lift(r, copies);
      const RasterSet back = exp_project(lifted, r.grid);
      REQUIRE(back == r);
    }
  }

  CHECK_THROWS_AS(exp_lift(strip, 1), GeometryMismatch);
  CHECK_THROWS_AS(exp_project(full, full.grid), GeometryMismatch);
}

TEST_CASE("plane squares web projects to a C*-spider's web") {
  const RasterSet plane = fixtures::plane_squares_web(3, 7.0, 2048);
  const PlaneWebCheck direct = plane_spiders_web_check(plane, 3);
  CHECK(direct.is_web);
  // Project through exp onto a logpolar raster that contains the squares.
  const double rho_max = 21.0 / 2.302585092994045684 * 1.05;
  const GridSpec target = GridSpec::logpolar(-rho_max, rho_max, 256, 256);
  const RasterSet projected = exp_project(plane, target);
  const WebCheck web = is_cstar_spiders_web(projected);
  CHECK(web.connected);
  CHECK(web.separation_ok);
  CHECK(web.is_web);
  CHECK(web.witness.size() >= 3);
}

TEST_CASE("a C*-web lifts to a plane spider's web") {
  // The window truncation limits the nested-ring count to about half the
  // circle count in each direction, so use a rich fixture and enough
  // periodic copies.
  const RasterSet web = fixtures::circles_with_spoke(7, 128);
  const RasterSet lifted = exp_lift(web, 7);
  const PlaneWebCheck check = plane_spiders_web_check(lifted, 3);
  CHECK(check.connected);
  CHECK(check.is_web);

  const RasterSet broken = fixtures::concentric_circles(7, 128);
  const PlaneWebCheck check2 = plane_spiders_web_check(exp_lift(broken, 7), 3);
  CHECK(!check2.is_web);
}

TEST_CASE("raster pbm round trip with grid sidecar") {
  const RasterSet r = fixtures::random_logpolar_mask(7, 48);
  const std::string path = "/tmp/cstar_test_mask.pbm";
  save_raster_pbm(path, r);
  const RasterSet back = load_raster_pbm(path);
  CHECK(back == r);
}

TEST_CASE("witness json shape") {
  const WebCheck web = is_cstar_spiders_web(fixtures::circles_with_spoke(3, 96));
  const std::string j = witness_json(web);
  CHECK(j.find("\"is_web\": true") != std::string::npos);
  CHECK(j.find("row_lo") != std::string::npos);
}
