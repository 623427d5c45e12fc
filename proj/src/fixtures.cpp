#include "cstar/fixtures.hpp"

#include <cmath>
#include <random>

namespace cstar::fixtures {

namespace {

void draw_ring(RasterSet* r, int row) {
  for (int c = 0; c < r->grid.width; ++c) r->set(row, c, true);
}

void draw_spoke(RasterSet* r, int col, int row_lo, int row_hi) {
  for (int row = row_lo; row <= row_hi; ++row) r->set(row, col, true);
}

int ring_row(int i, int n, int h) {
  return static_cast<int>(std::lround(h * (0.12 + 0.68 * i / (n - 1.0))));
}

}  // namespace

RasterSet circles_with_spoke(int n, int px) {
  if (n < 2) throw std::invalid_argument("circles_with_spoke: need n >= 2");
  RasterSet r = RasterSet::blank(GridSpec::logpolar(-2.0, 2.0, px, px));
  for (int i = 0; i < n; ++i) draw_ring(&r, ring_row(i, n, px));
  draw_spoke(&r, px / 3, ring_row(0, n, px), ring_row(n - 1, n, px));
  return r;
}

RasterSet concentric_circles(int n, int px) {
  if (n < 1) throw std::invalid_argument("concentric_circles: need n >= 1");
  RasterSet r = RasterSet::blank(GridSpec::logpolar(-2.0, 2.0, px, px));
  if (n == 1) {
    draw_ring(&r, px / 2);
    return r;
  }
  for (int i = 0; i < n; ++i) draw_ring(&r, ring_row(i, n, px));
  return r;
}

RasterSet single_circle(int px) { return concentric_circles(1, px); }

RasterSet plane_squares_web(int squares, double r1, int px) {
  if (squares < 1) throw std::invalid_argument("plane_squares_web: need >= 1 square");
  const double r_max = r1 * squares;
  const double l = r_max * 8.0 / 7.0;  // margin around the biggest square
  RasterSet r = RasterSet::blank(GridSpec::cartesian(-l, l, -l, l, px, px));
  const GridSpec& g = r.grid;
  const double dx = (g.x1 - g.x0) / g.width;
  const auto col_of = [&](double x) {
    return static_cast<int>((x - g.x0) / (g.x1 - g.x0) * g.width);
  };
  const auto row_of = [&](double y) {
    return static_cast<int>((g.y1 - y) / (g.y1 - g.y0) * g.height);
  };
  const auto clampc = [&](int c) { return std::min(std::max(c, 0), g.width - 1); };
  const auto clampr = [&](int row) { return std::min(std::max(row, 0), g.height - 1); };
  for (int k = 1; k <= squares; ++k) {
    const double R = r1 * k;
    const int c_lo = clampc(col_of(-R));
    const int c_hi = clampc(col_of(R));
    const int r_top = clampr(row_of(R));
    const int r_bot = clampr(row_of(-R));
    for (int c = c_lo; c <= c_hi; ++c) {
      r.set(r_top, c, true);
      r.set(r_bot, c, true);
    }
    for (int row = r_top; row <= r_bot; ++row) {
      r.set(row, c_lo, true);
      r.set(row, c_hi, true);
    }
  }
  // Connector along the positive real axis between the squares.
  const int row0 = clampr(row_of(0.0));
  for (double x = r1; x <= r_max; x += 0.5 * dx) {
    r.set(row0, clampc(col_of(x)), true);
  }
  return r;
}

RasterSet random_topology_fixture(std::uint64_t seed, int px) {
  std::mt19937_64 rng(seed);
  RasterSet r = RasterSet::blank(GridSpec::logpolar(-2.0, 2.0, px, px));
  std::uniform_int_distribution<int> row_d(2, px - 3);
  std::uniform_int_distribution<int> col_d(0, px - 1);
  std::uniform_int_distribution<int> rings_d(2, 5);
  std::uniform_int_distribution<int> spokes_d(0, 3);
  std::uniform_int_distribution<int> blobs_d(0, 4);
  std::bernoulli_distribution cover_rings(0.5);
  std::bernoulli_distribution punch_gap(0.35);

  const int nrings = rings_d(rng);
  std::vector<int> rows;
  for (int i = 0; i < nrings; ++i) {
    const int row = row_d(rng);
    rows.push_back(row);
    draw_ring(&r, row);
  }
  const int nspokes = spokes_d(rng);
  for (int i = 0; i < nspokes; ++i) {
    int a = row_d(rng), b = row_d(rng);
    if (a > b) std::swap(a, b);
    draw_spoke(&r, col_d(rng), a, b);
  }
  const int nblobs = blobs_d(rng);
  for (int i = 0; i < nblobs; ++i) {
    const int row = row_d(rng);
    const int col = col_d(rng);
    const int sz = 1 + static_cast<int>(rng() % 5);
    for (int dr = -sz; dr <= sz; ++dr) {
      for (int dc = -sz; dc <= sz; ++dc) {
        const int rr = row + dr;
        if (rr < 0 || rr >= px) continue;
        r.set(rr, (col + dc % px + px) % px, true);
      }
    }
  }
  if (cover_rings(rng)) {
    draw_ring(&r, 0);
    draw_ring(&r, px - 1);
  }
  if (punch_gap(rng) && !rows.empty()) {
    const int row = rows[rng() % rows.size()];
    const int col = col_d(rng);
    const int wgap = 2 + static_cast<int>(rng() % 6);
    for (int d = 0; d < wgap; ++d) r.set(row, (col + d) % px, false);
  }
  return r;
}

RasterSet random_logpolar_mask(std::uint64_t seed, int px) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution bit(0.35);
  RasterSet r = RasterSet::blank(GridSpec::logpolar(-1.5, 1.5, px, px));
  for (auto& c : r.mask) c = bit(rng) ? 1 : 0;
  return r;
}

RasterSet by_name(const std::string& name, int n, int px, std::uint64_t seed) {
  if (name == "circles-with-spoke") return circles_with_spoke(n > 0 ? n : 5, px);
  if (name == "concentric-circles") return concentric_circles(n > 0 ? n : 5, px);
  if (name == "single-circle") return single_circle(px);
  if (name == "plane-squares-web") return plane_squares_web(n > 0 ? n : 3, 7.0, px);
  if (name == "random") return random_topology_fixture(seed, px);
  throw UnknownFixture("unknown fixture: " + name);
}

BoxChain constant_box_chain(CPoint center, double half, int n) {
  BoxChain chain;
  for (int k = 0; k <= n; ++k) {
    chain.boxes.push_back(Box::plane(center, half, half));
  }
  return chain;
}

BoxChain orbit_box_chain(const MapParams& params, CPoint z0, int n,
                         double log_half) {
  BoxChain chain;
  CPoint z = z0;
  for (int k = 0; k <= n; ++k) {
    const double lm = 0.5 * std::log(z.x * z.x + z.y * z.y);
    const double ar = std::atan2(z.y, z.x);
    chain.boxes.push_back(Box::log_polar(lm, ar, log_half, log_half));
    if (k < n) {
      const EvalResult r = eval(params, z);
      if (!r.ok()) {
        throw std::invalid_argument("orbit_box_chain: orbit left the double range");
      }
      z = r.value;
    }
  }
  return chain;
}

}  // namespace cstar::fixtures
