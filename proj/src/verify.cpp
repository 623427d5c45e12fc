#include "cstar/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "cstar/parallel.hpp"
#include "json.hpp"

namespace cstar {

namespace {

constexpr double kPi = 3.141592653589793238462643;
constexpr double kTwoPi = 2.0 * kPi;

nlohmann::json to_json(const MarginReport& r) {
  nlohmann::json j;
  j["lemma"] = r.lemma;
  j["samples"] = r.samples;
  j["worst_margin"] = r.worst_margin;
  j["worst_location"] = {{"x", r.worst_location.x}, {"y", r.worst_location.y}};
  j["pass"] = r.pass;
  j["params"] = r.params;
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j;
}

// ln|f(z)| through the xi decomposition; finite unless genuinely beyond
// double range in log scale.
double log_abs_f(const MapParams& p, CPoint z) {
  const XiZeta xz = xi_zeta(z);
  return p.log_lambda() + 0.5 * std::log(z.x * z.x + z.y * z.y) + xz.xi;
}

struct WorstTracker {
  double margin = std::numeric_limits<double>::infinity();
  CPoint at{};
  void feed(double m, CPoint z) {
    if (m < margin) {
      margin = m;
      at = z;
    }
  }
  void merge(const WorstTracker& o) {
    if (o.margin < margin) {
      margin = o.margin;
      at = o.at;
    }
  }
};

double principal(double t) {
  double r = std::fmod(t, kTwoPi);
  if (r > kPi) r -= kTwoPi;
  if (r < -kPi) r += kTwoPi;
  return r;
}

}  // namespace

std::string report_json(const MarginReport& r) { return to_json(r).dump(2) + "\n"; }

std::string reports_json(const std::vector<MarginReport>& rs) {
  nlohmann::json arr = nlohmann::json::array();
  for (const MarginReport& r : rs) arr.push_back(to_json(r));
  return arr.dump(2) + "\n";
}

CPoint Box::center_point() const {
  if (!log_coords) return {c0, c1};
  const double m = std::exp(c0);
  return {m * std::cos(c1), m * std::sin(c1)};
}

double Box::distance_outside(CPoint z) const {
  double u, v;
  if (!log_coords) {
    u = z.x;
    v = z.y;
    const double du = std::fmax(0.0, std::fabs(u - c0) - h0);
    const double dv = std::fmax(0.0, std::fabs(v - c1) - h1);
    return std::fmax(du, dv);
  }
  const double r2 = z.x * z.x + z.y * z.y;
  if (r2 <= 0.0) return std::numeric_limits<double>::infinity();
  u = 0.5 * std::log(r2);
  v = std::atan2(z.y, z.x);
  const double du = std::fmax(0.0, std::fabs(u - c0) - h0);
  const double dv = std::fmax(0.0, std::fabs(principal(v - c1)) - h1);
  return std::fmax(du, dv);
}

MarginReport verify_growth(const MapParams& params, double x_max, double y_max,
                           long long samples, int threads) {
  if (params.lambda() < 2.0) {
    throw std::invalid_argument("verify_growth: needs lambda >= 2");
  }
  const int nx = std::max(2, static_cast<int>(std::llround(std::sqrt(static_cast<double>(samples)))));
  const int ny = nx;
  const double lx0 = std::log(2.0);
  const double lx1 = std::log(x_max);
  std::vector<WorstTracker> partial(nx);
  par::for_rows(nx, threads, [&](int i) {
    WorstTracker w;
    const double x = std::exp(lx0 + (lx1 - lx0) * i / (nx - 1));
    for (int j = 0; j < ny; ++j) {
      const double y = -y_max + 2.0 * y_max * j / (ny - 1);
      const ReImParts f = re_im_parts(params, {x, y});
      const double m = f.status == EvalStatus::kOk
                           ? f.re / (params.lambda() * x) - 0.7
                           : -std::numeric_limits<double>::infinity();
      w.feed(m, {x, y});
    }
    partial[i] = w;
  });
  WorstTracker total;
  for (const WorstTracker& w : partial) total.merge(w);
  MarginReport rep;
  rep.lemma = "growth";
  rep.samples = static_cast<long long>(nx) * ny;
  rep.worst_margin = total.margin;
  rep.worst_location = total.at;
  rep.pass = total.margin >= 0.0;
  rep.params = {{"lambda", params.lambda()}, {"x_max", x_max}, {"y_max", y_max}};
  return rep;
}

MarginReport verify_halfline(const MapParams& params, int n_lo, int n_hi,
                             int x_samples) {
  if (params.lambda() < 32.0) {
    throw std::invalid_argument("verify_halfline: needs lambda >= 32");
  }
  if (n_lo < 1 || n_hi < n_lo) {
    throw std::invalid_argument("verify_halfline: bad n range");
  }
  constexpr double kBand = 0.5;
  WorstTracker worst;
  for (int n = n_lo; n <= n_hi; ++n) {
    const double y = 2.0 * n * kPi;
    const double x_lo = -(std::log(y) + std::log(2.0));
    // Part (i): Re f >= 2 on the segment.
    for (int i = 0; i < x_samples; ++i) {
      const double x = x_lo + (10.0 - x_lo) * i / (x_samples - 1);
      const ReImParts f = re_im_parts(params, {x, y});
      const double m = f.status == EvalStatus::kOk
                           ? f.re - 2.0
                           : -std::numeric_limits<double>::infinity();
      worst.feed(m, {x, y});
    }
    // Part (ii): the Im f = 0 crossing nearest the predicted location,
    // scanned right to left.
    const double c = -(std::log(y) + std::log(kPi / 2.0));
    const auto im_at = [&](double x) { return re_im_parts(params, {x, y}).im; };
    const int scan = 600;
    double found = std::numeric_limits<double>::quiet_NaN();
    double xr = c + 1.5;
    double vr = im_at(xr);
    for (int i = 1; i <= scan; ++i) {
      const double xl = c + 1.5 - 3.0 * i / scan;
      const double vl = im_at(xl);
      if ((vl > 0.0) != (vr > 0.0)) {
        double a = xl, b = xr, va = vl;
        for (int k = 0; k < 100; ++k) {
          const double mid = 0.5 * (a + b);
          const double vm = im_at(mid);
          if ((vm > 0.0) == (va > 0.0)) {
            a = mid;
            va = vm;
          } else {
            b = mid;
          }
        }
        found = 0.5 * (a + b);
        break;
      }
      xr = xl;
      vr = vl;
    }
    const double m = std::isnan(found)
                         ? -std::numeric_limits<double>::infinity()
                         : kBand - std::fabs(found - c);
    worst.feed(m, {std::isnan(found) ? c : found, y});
  }
  MarginReport rep;
  rep.lemma = "halfline";
  rep.samples = static_cast<long long>(n_hi - n_lo + 1) * (x_samples + 1);
  rep.worst_margin = worst.margin;
  rep.worst_location = worst.at;
  rep.pass = worst.margin >= 0.0;
  rep.params = {{"lambda", params.lambda()},
                {"n_lo", static_cast<double>(n_lo)},
                {"n_hi", static_cast<double>(n_hi)},
                {"band", kBand}};
  return rep;
}

namespace {

enum class ChannelCase { kPlus, kMinus, kHorizEven, kHorizOdd };

struct ChannelSamples {
  std::vector<CPoint> pts;
  std::vector<std::pair<CPoint, CPoint>> pairs;  // (z0, z1), |z1| >= K |z0|
};

// Log-spaced radii (or |x|) crossed with a transversal sweep, kept strictly
// inside the channel. Pairs take the first sample with modulus ratio >= K
// along the same transversal index.
ChannelSamples sample_channel(ChannelCase cs, int n, double R, double K,
                              long long budget) {
  ChannelSamples out;
  const int nr = std::max(4, static_cast<int>(std::sqrt(static_cast<double>(budget)) * 2));
  const int na = std::max(2, static_cast<int>(budget / nr));
  if (cs == ChannelCase::kPlus || cs == ChannelCase::kMinus) {
    const double r_hi = 0.999 / R;
    const double r_lo = 1e-7;
    if (r_hi <= r_lo) throw EmptyChannelSample("channel radius window empty");
    const double phi_max = std::atan(0.25) * 0.98;
    for (int a = 0; a < na; ++a) {
      const double phi = -phi_max + 2.0 * phi_max * (a + 0.5) / na;
      std::vector<double> radii(nr);
      for (int i = 0; i < nr; ++i) {
        radii[i] = r_lo * std::pow(r_hi / r_lo, static_cast<double>(i) / (nr - 1));
      }
      std::vector<CPoint> line;
      for (double r : radii) {
        const double sgn = cs == ChannelCase::kPlus ? 1.0 : -1.0;
        const CPoint z{sgn * r * std::cos(phi), r * std::sin(phi)};
        out.pts.push_back(z);
        line.push_back(z);
      }
      for (size_t i = 0; i + 1 < radii.size(); ++i) {
        for (size_t j = i + 1; j < radii.size(); ++j) {
          if (radii[j] >= K * radii[i]) {
            out.pairs.emplace_back(line[i], line[j]);
            break;
          }
        }
      }
    }
    return out;
  }
  // Horizontal channel around n pi.
  const double x_hi = -R * (std::abs(n) + 1) * 1.001;
  const double x_lo = -std::fmax(60.0, 4.0 * R * (std::abs(n) + 1));
  const double y0 = n * kPi;
  for (int a = 0; a < na; ++a) {
    const double dy = -0.245 + 0.49 * (a + 0.5) / na;
    std::vector<CPoint> line;
    std::vector<double> mods;
    for (int i = 0; i < nr; ++i) {
      const double ax = -x_hi * std::pow(x_lo / x_hi, static_cast<double>(i) / (nr - 1));
      const CPoint z{-ax, y0 + dy};
      line.push_back(z);
      mods.push_back(std::hypot(z.x, z.y));
      out.pts.push_back(z);
    }
    for (size_t i = 0; i + 1 < line.size(); ++i) {
      for (size_t j = i + 1; j < line.size(); ++j) {
        if (mods[j] >= K * mods[i]) {
          out.pairs.emplace_back(line[i], line[j]);
          break;
        }
      }
    }
  }
  return out;
}

MarginReport channel_report(const MapParams& params, ChannelCase cs, int n,
                            double R, double L, double K, long long budget) {
  const ChannelSamples s = sample_channel(cs, n, R, K, budget);
  if (s.pts.empty()) throw EmptyChannelSample("no channel samples");
  const double logL = std::log(L);
  const double logLK = std::log(L * K);
  WorstTracker worst;
  for (const CPoint& z : s.pts) {
    const double la = log_abs_f(params, z);
    const double lz = 0.5 * std::log(z.x * z.x + z.y * z.y);
    double m = 0.0;
    switch (cs) {
      case ChannelCase::kPlus:       m = la - (logL - lz); break;       // |f| >= L/|z|
      case ChannelCase::kMinus:      m = (lz - logL) - la; break;       // |f| <= |z|/L
      case ChannelCase::kHorizOdd:   m = la - (logL + lz); break;       // |f| >= L|z|
      case ChannelCase::kHorizEven:  m = (-logL - lz) - la; break;      // |f| <= 1/(L|z|)
    }
    worst.feed(m, z);
  }
  for (const auto& [z0, z1] : s.pairs) {
    const double l0 = log_abs_f(params, z0);
    const double l1 = log_abs_f(params, z1);
    double m = 0.0;
    switch (cs) {
      case ChannelCase::kPlus:       m = (l0 - l1) - logLK; break;  // |f(z0)/f(z1)| >= LK
      case ChannelCase::kMinus:      m = (l1 - l0) - logLK; break;
      case ChannelCase::kHorizOdd:   m = (l1 - l0) - logLK; break;
      case ChannelCase::kHorizEven:  m = (l0 - l1) - logLK; break;
    }
    worst.feed(m, z0);
  }
  MarginReport rep;
  switch (cs) {
    case ChannelCase::kPlus: rep.lemma = "channels:c_plus"; break;
    case ChannelCase::kMinus: rep.lemma = "channels:c_minus"; break;
    case ChannelCase::kHorizOdd:
      rep.lemma = "channels:c_" + std::to_string(n);
      rep.notes = "horizontal channel on an odd multiple of pi: modulus blows up";
      break;
    case ChannelCase::kHorizEven:
      rep.lemma = "channels:c_" + std::to_string(n);
      rep.notes = "horizontal channel on an even multiple of pi: modulus collapses";
      break;
  }
  rep.samples = static_cast<long long>(s.pts.size() + s.pairs.size());
  rep.worst_margin = worst.margin;
  rep.worst_location = worst.at;
  rep.pass = worst.margin >= 0.0;
  rep.params = {{"lambda", params.lambda()}, {"R", R}, {"L", L}, {"K", K},
                {"n", static_cast<double>(n)}};
  return rep;
}

}  // namespace

std::vector<MarginReport> verify_channels(const MapParams& params, double R,
                                          double L, double K,
                                          long long samples_per_channel) {
  if (params.lambda() < 32.0) {
    throw std::invalid_argument("verify_channels: needs lambda >= 32");
  }
  if (!(R >= 1.0) || !(L > 1.0) || !(K > 1.0)) {
    throw std::invalid_argument("verify_channels: need R >= 1, L > 1, K > 1");
  }
  std::vector<MarginReport> out;
  out.push_back(channel_report(params, ChannelCase::kPlus, 0, R, L, K,
                               samples_per_channel));
  out.push_back(channel_report(params, ChannelCase::kMinus, 0, R, L, K,
                               samples_per_channel));
  for (int n : {0, 2, -2}) {
    out.push_back(channel_report(params, ChannelCase::kHorizEven, n, R, L, K,
                                 samples_per_channel));
  }
  for (int n : {1, -1}) {
    out.push_back(channel_report(params, ChannelCase::kHorizOdd, n, R, L, K,
                                 samples_per_channel));
  }
  return out;
}

double find_channel_R(const MapParams& params, double L, double K,
                      long long samples_per_channel, double r_start,
                      double r_limit) {
  for (double R = r_start; R <= r_limit; R *= 2.0) {
    const std::vector<MarginReport> reps =
        verify_channels(params, R, L, K, samples_per_channel);
    const bool all = std::all_of(reps.begin(), reps.end(),
                                 [](const MarginReport& r) { return r.pass; });
    if (all) return R;
  }
  throw std::runtime_error("find_channel_R: no passing R up to the limit");
}

namespace {

// Violation of the whole chain for a concrete starting point.
double chain_violation(const MapParams& params, const BoxChain& chain,
                       CPoint z0) {
  double worst = chain.boxes[0].distance_outside(z0);
  CPoint z = z0;
  for (size_t k = 1; k < chain.boxes.size(); ++k) {
    const EvalResult r = eval(params, z);
    if (!r.ok()) return std::numeric_limits<double>::infinity();
    z = r.value;
    worst = std::fmax(worst, chain.boxes[k].distance_outside(z));
  }
  return worst;
}

struct SearchBox {
  double c0, c1, h0, h1;
};

}  // namespace

double shadow_residual(const MapParams& params, const BoxChain& chain,
                       CPoint z) {
  return chain_violation(params, chain, z);
}

CPoint shadow_orbit(const MapParams& params, const BoxChain& chain, int depth) {
  if (chain.boxes.empty()) throw std::invalid_argument("shadow_orbit: empty chain");
  constexpr double kTol = 1e-8;
  const Box& e0 = chain.boxes[0];
  const auto point_of = [&](double c0, double c1) -> CPoint {
    if (!e0.log_coords) return {c0, c1};
    const double m = std::exp(c0);
    return {m * std::cos(c1), m * std::sin(c1)};
  };
  if (chain.boxes.size() == 1) return point_of(e0.c0, e0.c1);

  long nodes = 0;
  constexpr long kNodeBudget = 200000;

  // Depth-first, best child first; deterministic tie-break on child index.
  std::function<bool(SearchBox, int, CPoint*)> descend =
      [&](SearchBox b, int level, CPoint* found) -> bool {
    if (++nodes > kNodeBudget) return false;
    const CPoint center = point_of(b.c0, b.c1);
    const double v = chain_violation(params, chain, center);
    if (v <= kTol) {
      *found = center;
      return true;
    }
    if (level >= depth) return false;
    struct Child {
      SearchBox box;
      double score;
      int idx;
    };
    Child kids[4];
    const double h0 = 0.5 * b.h0;
    const double h1 = 0.5 * b.h1;
    int k = 0;
    for (int i = -1; i <= 1; i += 2) {
      for (int j = -1; j <= 1; j += 2) {
        SearchBox cb{b.c0 + i * h0, b.c1 + j * h1, h0, h1};
        kids[k] = {cb, chain_violation(params, chain, point_of(cb.c0, cb.c1)), k};
        ++k;
      }
    }
    std::sort(kids, kids + 4, [](const Child& a, const Child& b2) {
      return a.score != b2.score ? a.score < b2.score : a.idx < b2.idx;
    });
    for (const Child& c : kids) {
      if (!std::isfinite(c.score)) continue;
      if (descend(c.box, level + 1, found)) return true;
    }
    return false;
  };

  CPoint found{};
  if (descend({e0.c0, e0.c1, e0.h0, e0.h1}, 0, &found)) return found;
  throw NoPointFound("shadow_orbit: subdivision exhausted without a tracking point");
}

bool box_chain_covering_plausible(const MapParams& params,
                                  const BoxChain& chain, int mesh_per_edge) {
  if (chain.boxes.size() < 2) return true;
  const auto to_log = [](CPoint z) -> CPoint {
    return {0.5 * std::log(z.x * z.x + z.y * z.y), std::atan2(z.y, z.x)};
  };
  for (size_t k = 0; k + 1 < chain.boxes.size(); ++k) {
    const Box& a = chain.boxes[k];
    const Box& b = chain.boxes[k + 1];
    // Image of a boundary mesh of E_k, in log coordinates unwrapped around
    // the image of the center.
    std::vector<CPoint> img;
    const EvalResult rc = eval(params, a.center_point());
    if (!rc.ok()) return false;
    const CPoint c_log = to_log(rc.value);
    for (int side = 0; side < 4; ++side) {
      for (int i = 0; i <= mesh_per_edge; ++i) {
        const double t = -1.0 + 2.0 * i / mesh_per_edge;
        double u = a.c0, v = a.c1;
        switch (side) {
          case 0: u += t * a.h0; v -= a.h1; break;
          case 1: u += t * a.h0; v += a.h1; break;
          case 2: u -= a.h0; v += t * a.h1; break;
          case 3: u += a.h0; v += t * a.h1; break;
        }
        CPoint z;
        if (a.log_coords) {
          const double m = std::exp(u);
          z = {m * std::cos(v), m * std::sin(v)};
        } else {
          z = {u, v};
        }
        const EvalResult r = eval(params, z);
        if (!r.ok()) return false;
        CPoint w = to_log(r.value);
        w.y = c_log.y + principal(w.y - c_log.y);
        img.push_back(w);
      }
    }
    // Convex hull (monotone chain) of the image mesh.
    std::sort(img.begin(), img.end(), [](CPoint p, CPoint q) {
      return p.x != q.x ? p.x < q.x : p.y < q.y;
    });
    const auto cross = [](CPoint o, CPoint p, CPoint q) {
      return (p.x - o.x) * (q.y - o.y) - (p.y - o.y) * (q.x - o.x);
    };
    std::vector<CPoint> hull(2 * img.size());
    size_t m = 0;
    for (const CPoint& p : img) {
      while (m >= 2 && cross(hull[m - 2], hull[m - 1], p) <= 0.0) --m;
      hull[m++] = p;
    }
    const size_t lower = m + 1;
    for (size_t i = img.size(); i-- > 0;) {
      while (m >= lower && cross(hull[m - 2], hull[m - 1], img[i]) <= 0.0) --m;
      hull[m++] = img[i];
    }
    hull.resize(m > 0 ? m - 1 : 0);
    if (hull.size() < 3) return false;
    // Corners of E_{k+1}, in the same log chart.
    for (int i = -1; i <= 1; i += 2) {
      for (int j = -1; j <= 1; j += 2) {
        double u = b.c0 + i * b.h0;
        double v = b.c1 + j * b.h1;
        CPoint corner;
        if (b.log_coords) {
          corner = {u, v};
        } else {
          const double x = u, y = v;
          corner = to_log({x, y});
        }
        corner.y = c_log.y + principal(corner.y - c_log.y);
        bool inside = true;
        for (size_t h = 0; h < hull.size(); ++h) {
          const CPoint& p = hull[h];
          const CPoint& q = hull[(h + 1) % hull.size()];
          if (cross(p, q, corner) < 0.0) {
            inside = false;
            break;
          }
        }
        if (!inside) return false;
      }
    }
  }
  return true;
}

}  // namespace cstar
