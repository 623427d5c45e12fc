#ifndef CSTAR_VERIFY_HPP
#define CSTAR_VERIFY_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "cstar/complex_map.hpp"

namespace cstar {

// Worst case of one sampled inequality. pass <=> worst_margin >= 0.
struct MarginReport {
  std::string lemma;
  long long samples = 0;
  double worst_margin = 0.0;
  CPoint worst_location{};
  bool pass = false;
  std::map<std::string, double> params;
  std::string notes;
};

std::string report_json(const MarginReport& r);
std::string reports_json(const std::vector<MarginReport>& rs);

// Axis-aligned box, in plane or log coordinates (center/half-width form).
struct Box {
  bool log_coords = false;
  double c0 = 0.0, c1 = 0.0;  // (x, y) or (ln|z|, arg z)
  double h0 = 0.0, h1 = 0.0;

  static Box plane(CPoint center, double hx, double hy) {
    return {false, center.x, center.y, hx, hy};
  }
  static Box log_polar(double log_mod, double arg, double h_log, double h_arg) {
    return {true, log_mod, arg, h_log, h_arg};
  }
  CPoint center_point() const;
  // How far outside the box z lies, measured in the box's own coordinates
  // (log metric for log boxes); 0 inside.
  double distance_outside(CPoint z) const;
  bool contains(CPoint z, double tol = 0.0) const {
    return distance_outside(z) <= tol;
  }
};

struct BoxChain {
  std::vector<Box> boxes;  // E_0 .. E_N
};

struct NoPointFound : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct EmptyChannelSample : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// min over a log-spaced-x grid (x in [2, x_max], |y| <= y_max) of
// Re f / (lambda x) - 0.7. Deterministic for any thread count.
MarginReport verify_growth(const MapParams& params, double x_max, double y_max,
                           long long samples, int threads = 0);

// Along y = 2 n pi for each n in [n_lo, n_hi]: the minimum of Re f - 2 over
// x in [-(ln y + ln 2), 10], and the crossing of Im f = 0 nearest the
// predicted x = -(ln y + ln(pi/2)) (the margin for the crossing part is
// band - |x* - predicted| with band = 0.5).
MarginReport verify_halfline(const MapParams& params, int n_lo, int n_hi,
                             int x_samples = 2000);

// Channel bounds at parameters (R, L, K), sampled pointwise and in pairs
// with |z1/z0| >= K, all moduli in log scale. The horizontal channels obey
// the parity the map actually exhibits: |f| >= L|z| (and |f(z1)| >= LK
// |f(z0)|) on odd multiples of pi, |f| <= 1/(L|z|) (mirrored ratio) on even
// ones; C+ blows up as L/|z| and C- contracts as |z|/L. One report per
// channel case.
std::vector<MarginReport> verify_channels(const MapParams& params, double R,
                                          double L, double K,
                                          long long samples_per_channel);

// Doubles R from r_start until every channel case passes; returns the found
// R (throws std::runtime_error past r_limit).
double find_channel_R(const MapParams& params, double L, double K,
                      long long samples_per_channel, double r_start = 2.0,
                      double r_limit = 1024.0);

// A point z in E_0 whose iterates track the chain: f^k(z) in E_k inflated
// by 1e-8 (log metric) for all k. Deterministic best-first subdivision of
// E_0; throws NoPointFound when the subdivision budget is exhausted.
CPoint shadow_orbit(const MapParams& params, const BoxChain& chain, int depth);

// Post-hoc check of a shadow point by direct iteration: the largest
// box-distance of f^k(z) from E_k over the chain.
double shadow_residual(const MapParams& params, const BoxChain& chain,
                       CPoint z);

// Sample check of the covering relation f(E_k) superset E_{k+1}: maps a
// boundary mesh of each E_k and tests that the image hull contains the
// corners of E_{k+1} (in log coordinates).
bool box_chain_covering_plausible(const MapParams& params,
                                  const BoxChain& chain,
                                  int mesh_per_edge = 64);

}  // namespace cstar

#endif  // CSTAR_VERIFY_HPP
