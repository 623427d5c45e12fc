#include "cstar/raster.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cstar/image_io.hpp"
#include "json.hpp"

namespace cstar {

namespace {

constexpr double kTwoPi = 6.283185307179586476925287;
constexpr double kLn10 = 2.302585092994045684017991;

// Flood labeling over an arbitrary membership predicate.
ComponentLabeling label_cells(const GridSpec& g,
                              const std::vector<std::uint8_t>& want) {
  const int w = g.width;
  const int h = g.height;
  const bool wrap = g.mode == GridMode::kLogPolar;
  ComponentLabeling out;
  out.label.assign(static_cast<size_t>(w) * h, -1);
  std::vector<long> stack;
  for (long start = 0; start < static_cast<long>(want.size()); ++start) {
    if (!want[start] || out.label[start] >= 0) continue;
    const std::int32_t id = static_cast<std::int32_t>(out.comps.size());
    out.comps.emplace_back();
    ComponentInfo& info = out.comps.back();
    stack.push_back(start);
    out.label[start] = id;
    while (!stack.empty()) {
      const long cur = stack.back();
      stack.pop_back();
      const int r = static_cast<int>(cur / w);
      const int c = static_cast<int>(cur % w);
      ++info.size;
      if (r == 0) info.touches_row0 = true;
      if (r == h - 1) info.touches_rowlast = true;
      if (!wrap && c == 0) info.touches_col0 = true;
      if (!wrap && c == w - 1) info.touches_collast = true;
      const auto visit = [&](int rr, int cc) {
        const long idx = static_cast<long>(rr) * w + cc;
        if (want[idx] && out.label[idx] < 0) {
          out.label[idx] = id;
          stack.push_back(idx);
        }
      };
      if (r > 0) visit(r - 1, c);
      if (r < h - 1) visit(r + 1, c);
      if (c > 0) visit(r, c - 1);
      else if (wrap) visit(r, w - 1);
      if (c < w - 1) visit(r, c + 1);
      else if (wrap) visit(r, 0);
    }
  }
  return out;
}

std::vector<std::uint8_t> invert(const std::vector<std::uint8_t>& m) {
  std::vector<std::uint8_t> out(m.size());
  for (size_t i = 0; i < m.size(); ++i) out[i] = m[i] ? 0 : 1;
  return out;
}

// T(S) for an arbitrary cell set given as a mask (not necessarily r.mask).
std::vector<std::uint8_t> fill_mask(const GridSpec& g,
                                    const std::vector<std::uint8_t>& mask) {
  RasterSet tmp;
  tmp.grid = g;
  tmp.mask = mask;
  const ComponentLabeling comp = components(tmp, Target::kComplement);
  std::vector<std::uint8_t> out = mask;
  for (size_t i = 0; i < out.size(); ++i) {
    const std::int32_t id = comp.label[i];
    if (id >= 0 && comp.comps[id].interior(g)) out[i] = 1;
  }
  return out;
}

struct GrowthResult {
  bool failed = false;  // some component met by K touches a ring/border
  std::vector<std::array<int, 2>> domains;   // row extents of the G'_k
  std::vector<std::uint8_t> covered;         // union of K and all G'_k
};

// Witness construction: K starts as a central annulus (one row band) and is
// repeatedly replaced by the hole-filled union of a slightly larger band
// with the previous domain. Each G'_k is the hole-filled union of K with
// every complement component K meets; construction stops when such a
// component reaches a ring/border or when the band reaches the window edge.
GrowthResult grow_witness(const RasterSet& r, const ComponentLabeling& comp) {
  const GridSpec& g = r.grid;
  const int w = g.width;
  const int h = g.height;
  GrowthResult res;
  std::vector<std::uint8_t> k_mask(r.mask.size(), 0);
  int lo = h / 2, hi = h / 2;
  for (int c = 0; c < w; ++c) k_mask[static_cast<size_t>(lo) * w + c] = 1;

  std::array<int, 2> prev{-1, -1};
  while (true) {
    std::vector<char> comp_hit(comp.comps.size(), 0);
    for (size_t i = 0; i < k_mask.size(); ++i) {
      if (k_mask[i] && comp.label[i] >= 0) comp_hit[comp.label[i]] = 1;
    }
    std::vector<std::uint8_t> u = k_mask;
    for (size_t id = 0; id < comp_hit.size(); ++id) {
      if (!comp_hit[id]) continue;
      if (!comp.comps[id].interior(g)) {
        res.failed = true;
        res.covered = std::move(u);
        return res;
      }
    }
    for (size_t i = 0; i < u.size(); ++i) {
      const std::int32_t id = comp.label[i];
      if (id >= 0 && comp_hit[id]) u[i] = 1;
    }
    std::vector<std::uint8_t> gdom = fill_mask(g, u);
    int glo = h, ghi = -1;
    for (size_t i = 0; i < gdom.size(); ++i) {
      if (!gdom[i]) continue;
      const int row = static_cast<int>(i / w);
      glo = std::min(glo, row);
      ghi = std::max(ghi, row);
    }
    if (ghi >= 0 && (glo != prev[0] || ghi != prev[1])) {
      res.domains.push_back({glo, ghi});
      prev = {glo, ghi};
    }
    if (glo <= 0 && ghi >= h - 1) {
      res.covered = std::move(gdom);
      return res;
    }
    lo = std::max(0, std::min(lo - 1, glo - 1));
    hi = std::min(h - 1, std::max(hi + 1, ghi + 1));
    k_mask = std::move(gdom);
    for (int row = lo; row <= hi; ++row) {
      for (int c = 0; c < w; ++c) k_mask[static_cast<size_t>(row) * w + c] = 1;
    }
    k_mask = fill_mask(g, k_mask);
    if (lo == 0 && hi == h - 1) {
      // Band spans the full window: one final domain evaluation remains.
      std::vector<char> hit(comp.comps.size(), 0);
      for (size_t i = 0; i < k_mask.size(); ++i) {
        if (k_mask[i] && comp.label[i] >= 0) hit[comp.label[i]] = 1;
      }
      for (size_t id = 0; id < hit.size(); ++id) {
        if (hit[id] && !comp.comps[id].interior(g)) {
          res.failed = true;
          res.covered = k_mask;
          return res;
        }
      }
      res.covered = k_mask;
      if (res.domains.empty() || res.domains.back()[0] > 0 ||
          res.domains.back()[1] < h - 1) {
        res.domains.push_back({0, h - 1});
      }
      return res;
    }
  }
}

}  // namespace

long RasterSet::count() const {
  return std::accumulate(mask.begin(), mask.end(), 0L,
                         [](long a, std::uint8_t b) { return a + (b ? 1 : 0); });
}

ComponentLabeling components(const RasterSet& r, Target of) {
  if (of == Target::kSet) return label_cells(r.grid, r.mask);
  return label_cells(r.grid, invert(r.mask));
}

RasterSet fill_T(const RasterSet& r) {
  RasterSet out;
  out.grid = r.grid;
  out.mask = fill_mask(r.grid, r.mask);
  return out;
}

bool separates(const RasterSet& r, int row, int col) {
  if (r.at(row, col)) {
    throw std::domain_error("separates: the point belongs to the set");
  }
  const ComponentLabeling comp = components(r, Target::kComplement);
  const std::int32_t id = comp.label_at(r.grid, row, col);
  return comp.comps[id].interior(r.grid);
}

WebCheck is_cstar_spiders_web(const RasterSet& r) {
  WebCheck out;
  const ComponentLabeling set_comps = components(r, Target::kSet);
  out.connected = set_comps.comps.size() == 1;
  const ComponentLabeling comp = components(r, Target::kComplement);
  int inner = 0, outer = 0;
  bool bad = false;
  for (const ComponentInfo& c : comp.comps) {
    if (c.touches_row0 && c.touches_rowlast) bad = true;
    if (c.touches_row0) ++inner;
    if (c.touches_rowlast) ++outer;
  }
  out.separation_ok = !bad && inner <= 1 && outer <= 1;
  if (out.connected && out.separation_ok) {
    GrowthResult growth = grow_witness(r, comp);
    out.witness = std::move(growth.domains);
  }
  // A web needs an actual nested sequence, not just clean components: a
  // bare circle separates nothing.
  const bool nested =
      out.witness.size() >= 2 &&
      (out.witness.back()[0] < out.witness.front()[0] ||
       out.witness.back()[1] > out.witness.front()[1]);
  out.is_web = out.connected && out.separation_ok && nested;
  return out;
}

bool witness_exhausts(const RasterSet& r) {
  const ComponentLabeling comp = components(r, Target::kComplement);
  GrowthResult growth = grow_witness(r, comp);
  if (growth.failed) return false;
  // Exhaustion: every complement cell was swallowed by some domain.
  for (size_t i = 0; i < r.mask.size(); ++i) {
    if (!r.mask[i] && !growth.covered[i]) return false;
  }
  return true;
}

bool all_components_interior(const RasterSet& r) {
  const ComponentLabeling comp = components(r, Target::kComplement);
  for (const ComponentInfo& c : comp.comps) {
    if (!c.interior(r.grid)) return false;
  }
  return true;
}

bool sampled_points_separated(const RasterSet& r) {
  const ComponentLabeling comp = components(r, Target::kComplement);
  for (int row = 0; row < r.grid.height; ++row) {
    for (int col = 0; col < r.grid.width; ++col) {
      if (r.at(row, col)) continue;
      const std::int32_t id = comp.label_at(r.grid, row, col);
      if (!comp.comps[id].interior(r.grid)) return false;
    }
  }
  return true;
}

PlaneWebCheck plane_spiders_web_check(const RasterSet& cart, int min_rings) {
  if (cart.grid.mode != GridMode::kCartesian) {
    throw GeometryMismatch("plane_spiders_web_check: cartesian raster expected");
  }
  PlaneWebCheck out;
  out.connected = components(cart, Target::kSet).comps.size() == 1;

  const GridSpec& g = cart.grid;
  const int w = g.width;
  const int h = g.height;
  const ComponentLabeling comp = components(cart, Target::kComplement);

  // Grow concentric filled rectangles from the center; each valid step
  // yields a nested enclosed domain.
  int r0 = h / 2, r1 = h / 2, c0 = w / 2, c1 = w / 2;
  std::array<int, 4> prev{-1, -1, -1, -1};
  while (r0 > 0 && r1 < h - 1 && c0 > 0 && c1 < w - 1) {
    std::vector<std::uint8_t> k_mask(cart.mask.size(), 0);
    for (int r = r0; r <= r1; ++r) {
      for (int c = c0; c <= c1; ++c) k_mask[static_cast<size_t>(r) * w + c] = 1;
    }
    std::vector<char> hit(comp.comps.size(), 0);
    for (size_t i = 0; i < k_mask.size(); ++i) {
      if (k_mask[i] && comp.label[i] >= 0) hit[comp.label[i]] = 1;
    }
    bool failed = false;
    for (size_t id = 0; id < hit.size(); ++id) {
      if (hit[id] && comp.comps[id].touches_border()) failed = true;
    }
    if (failed) break;
    std::vector<std::uint8_t> u = k_mask;
    for (size_t i = 0; i < u.size(); ++i) {
      const std::int32_t id = comp.label[i];
      if (id >= 0 && hit[id]) u[i] = 1;
    }
    const std::vector<std::uint8_t> gdom = fill_mask(g, u);
    int gr0 = h, gr1 = -1, gc0 = w, gc1 = -1;
    for (size_t i = 0; i < gdom.size(); ++i) {
      if (!gdom[i]) continue;
      const int r = static_cast<int>(i / w);
      const int c = static_cast<int>(i % w);
      gr0 = std::min(gr0, r);
      gr1 = std::max(gr1, r);
      gc0 = std::min(gc0, c);
      gc1 = std::max(gc1, c);
    }
    const std::array<int, 4> cur{gr0, gr1, gc0, gc1};
    if (cur != prev) {
      ++out.rings;
      prev = cur;
    }
    r0 = std::min(r0 - 1, gr0 - 1);
    r1 = std::max(r1 + 1, gr1 + 1);
    c0 = std::min(c0 - 1, gc0 - 1);
    c1 = std::max(c1 + 1, gc1 + 1);
  }
  out.is_web = out.connected && out.rings >= min_rings;
  return out;
}

RasterSet exp_lift(const RasterSet& logpolar, int copies) {
  if (logpolar.grid.mode != GridMode::kLogPolar) {
    throw GeometryMismatch("exp_lift: logpolar raster expected");
  }
  if (copies < 1) throw GeometryMismatch("exp_lift: copies must be >= 1");
  const GridSpec& lp = logpolar.grid;
  const GridSpec strip = GridSpec::cartesian(
      lp.x0 * kLn10, lp.x1 * kLn10, 0.0, copies * kTwoPi, lp.height,
      copies * lp.width);
  RasterSet out = RasterSet::blank(strip);
  for (int row = 0; row < strip.height; ++row) {
    for (int col = 0; col < strip.width; ++col) {
      const double u = strip.x0 + (col + 0.5) * (strip.x1 - strip.x0) / strip.width;
      const double v = strip.y1 - (row + 0.5) * (strip.y1 - strip.y0) / strip.height;
      double th = std::fmod(v, kTwoPi);
      if (th < 0.0) th += kTwoPi;
      const double rho10 = u / kLn10;
      const double fr = (rho10 - lp.x0) / (lp.x1 - lp.x0) * lp.height;
      int lr = static_cast<int>(fr);
      int lc = static_cast<int>(th / kTwoPi * lp.width);
      lr = std::clamp(lr, 0, lp.height - 1);
      lc = std::clamp(lc, 0, lp.width - 1);
      out.set(row, col, logpolar.at(lr, lc) != 0);
    }
  }
  return out;
}

RasterSet exp_project(const RasterSet& cart, const GridSpec& target) {
  if (cart.grid.mode != GridMode::kCartesian) {
    throw GeometryMismatch("exp_project: cartesian raster expected");
  }
  if (target.mode != GridMode::kLogPolar) {
    throw GeometryMismatch("exp_project: logpolar target expected");
  }
  RasterSet out = RasterSet::blank(target);
  const GridSpec& g = cart.grid;
  for (int row = 0; row < g.height; ++row) {
    for (int col = 0; col < g.width; ++col) {
      if (!cart.at(row, col)) continue;
      const double u = g.x0 + (col + 0.5) * (g.x1 - g.x0) / g.width;
      const double v = g.y1 - (row + 0.5) * (g.y1 - g.y0) / g.height;
      const double rho10 = u / kLn10;
      const double fr = (rho10 - target.x0) / (target.x1 - target.x0) * target.height;
      if (fr < 0.0 || fr >= target.height) continue;
      double th = std::fmod(v, kTwoPi);
      if (th < 0.0) th += kTwoPi;
      int tc = static_cast<int>(th / kTwoPi * target.width);
      if (tc >= target.width) tc = target.width - 1;
      out.set(static_cast<int>(fr), tc, true);
    }
  }
  return out;
}

RasterSet rotate_theta(const RasterSet& r, int cols) {
  if (r.grid.mode != GridMode::kLogPolar) {
    throw GeometryMismatch("rotate_theta: logpolar raster expected");
  }
  RasterSet out = RasterSet::blank(r.grid);
  const int w = r.grid.width;
  const int shift = ((cols % w) + w) % w;
  for (int row = 0; row < r.grid.height; ++row) {
    for (int col = 0; col < w; ++col) {
      out.set(row, (col + shift) % w, r.at(row, col) != 0);
    }
  }
  return out;
}

void save_raster_pbm(const std::string& path, const RasterSet& r) {
  atomic_write_file(path, encode_pbm(r.grid.width, r.grid.height, r.mask));
  nlohmann::json j;
  j["mode"] = r.grid.mode == GridMode::kLogPolar ? "logpolar" : "cartesian";
  j["x0"] = r.grid.x0;
  j["x1"] = r.grid.x1;
  j["y0"] = r.grid.y0;
  j["y1"] = r.grid.y1;
  j["width"] = r.grid.width;
  j["height"] = r.grid.height;
  atomic_write_file(path + ".grid.json", j.dump(2) + "\n");
}

RasterSet load_raster_pbm(const std::string& path) {
  const std::vector<std::uint8_t> bytes = read_file(path);
  RasterSet r;
  int w = 0, h = 0;
  decode_pbm(bytes, &w, &h, &r.mask);
  const std::vector<std::uint8_t> meta = read_file(path + ".grid.json");
  const nlohmann::json j = nlohmann::json::parse(meta.begin(), meta.end());
  const std::string mode = j.at("mode").get<std::string>();
  if (mode == "logpolar") {
    r.grid = GridSpec::logpolar(j.at("x0").get<double>(), j.at("x1").get<double>(), w, h);
  } else {
    r.grid = GridSpec::cartesian(j.at("x0").get<double>(), j.at("x1").get<double>(),
                                 j.at("y0").get<double>(), j.at("y1").get<double>(), w, h);
  }
  if (j.at("width").get<int>() != w || j.at("height").get<int>() != h) {
    throw GeometryMismatch("load_raster_pbm: sidecar size mismatch");
  }
  return r;
}

std::string witness_json(const WebCheck& check) {
  nlohmann::json j;
  j["is_web"] = check.is_web;
  j["connected"] = check.connected;
  j["separation_ok"] = check.separation_ok;
  nlohmann::json rings = nlohmann::json::array();
  for (const auto& d : check.witness) {
    rings.push_back({{"row_lo", d[0]}, {"row_hi", d[1]}});
  }
  j["witness"] = rings;
  return j.dump(2) + "\n";
}

}  // namespace cstar
