#include "cstar/orbit.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "cstar/parallel.hpp"

namespace cstar {

namespace {

constexpr double kTwoPi = 6.283185307179586476925287;
constexpr double kSwitchHi = 690.7755278982137;   // ln 1e300
constexpr double kSwitchBack = 660.0;             // hysteresis for re-entry
constexpr double kSatRho = 1e300;                 // saturation clamp
constexpr double kReRecoverMax = 700.0;           // e^rho representable

double principal(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t > 3.141592653589793) t -= kTwoPi;
  if (t < -3.141592653589793) t += kTwoPi;
  return t;
}

// One orbit, advanced through point coordinates while |z| stays in
// [1e-300, 1e300], through the lift beyond that, and by sign rules alone
// beyond log-modulus 1e300 (where the angle is no longer meaningful).
struct Stepper {
  const PointMap& map;
  bool log_regime = false;
  bool angle_ok = true;
  CPoint z{};
  double rho = 0.0;
  double theta = 0.0;

  explicit Stepper(const PointMap& m, CPoint z0) : map(m) {
    if (z0.x == 0.0 && z0.y == 0.0) {
      throw std::domain_error("orbit: z = 0 is not a point of C*");
    }
    z = z0;
  }

  double log_modulus() const {
    if (!log_regime) return 0.5 * std::log(z.x * z.x + z.y * z.y);
    return rho;
  }

  // Re of the current point when recoverable; NaN otherwise.
  double re_part() const {
    if (!log_regime) return z.x;
    if (!angle_ok || rho > kReRecoverMax) {
      return std::numeric_limits<double>::quiet_NaN();
    }
    return std::exp(rho) * std::cos(theta);
  }

  bool in_H() const {
    const double re = re_part();
    return re >= 2.0;  // NaN compares false
  }

  void enter_log(double logmod, double arg) {
    log_regime = true;
    if (std::isfinite(logmod)) {
      rho = std::fmin(std::fmax(logmod, -kSatRho), kSatRho);
    } else {
      rho = logmod > 0.0 ? kSatRho : -kSatRho;
    }
    if (std::isfinite(arg) && std::fabs(arg) < 1e15) {
      theta = principal(arg);
    } else {
      theta = 0.0;
      angle_ok = false;
    }
  }

  void advance() {
    if (!log_regime) {
      const EvalResult r = map.eval(z);
      if (r.ok() && std::fabs(r.log_modulus) <= kSwitchHi) {
        z = r.value;
        return;
      }
      enter_log(r.log_modulus, r.arg);
      return;
    }
    if (std::fabs(rho) >= 0.5 * kSatRho) {
      // Saturated: for huge |z| the map acts like z -> lambda z; for tiny
      // |z| the tail exp(e^{-z}/z) dominates with sign cos(arg 1/z).
      if (rho > 0.0) return;
      const double c = std::cos(theta);
      rho = c >= 0.0 ? kSatRho : -kSatRho;
      theta = 0.0;
      angle_ok = false;
      return;
    }
    const Cplx w = map.eval_log(Cplx(rho, theta));
    const double nr = w.real();
    if (!std::isfinite(nr) || std::fabs(nr) >= kSatRho) {
      enter_log(nr, w.imag());
      return;
    }
    if (std::fabs(nr) <= kSwitchBack && angle_ok && std::isfinite(w.imag())) {
      // Back inside the comfortable double range.
      log_regime = false;
      const double th = principal(w.imag());
      const double m = std::exp(nr);
      z = {m * std::cos(th), m * std::sin(th)};
      return;
    }
    rho = nr;
    if (std::isfinite(w.imag()) && std::fabs(w.imag()) < 1e15) {
      theta = principal(w.imag());
    } else {
      theta = 0.0;
      angle_ok = false;
    }
  }
};

}  // namespace

OrbitRecord classify_orbit(const PointMap& map, CPoint z, int budget,
                           int horizon) {
  if (horizon < 1 || budget < horizon + 2) {
    throw std::invalid_argument("classify_orbit: budget must be >= horizon + 2");
  }
  Stepper st(map, z);
  OrbitRecord rec;
  rec.steps.resize(budget + 1);
  rec.budget_used = budget;

  std::vector<char> in_h(budget + 1, 0);
  rec.steps[0].log_modulus = st.log_modulus();
  in_h[0] = st.in_H() ? 1 : 0;
  for (int n = 1; n <= budget; ++n) {
    st.advance();
    rec.steps[n].log_modulus = st.log_modulus();
    in_h[n] = st.in_H() ? 1 : 0;
  }

  for (int n = 0; n <= budget; ++n) {
    rec.steps[n].in_H = in_h[n] != 0;
    if (n == 0) continue;
    unsigned c = kCondNone;
    const double lm = rec.steps[n].log_modulus;
    if (lm >= std::log(0.5 * n)) c |= kCondBig;
    if (lm <= std::log(2.0 / n)) c |= kCondSmall;
    if (n + 2 <= budget && in_h[n + 2]) c |= kCondH2;
    rec.steps[n].conditions = c;
  }

  for (int n = 0; n <= budget; ++n) {
    if (in_h[n]) {
      rec.first_H_entry = n;
      break;
    }
  }

  bool absorbed = false;
  if (rec.first_H_entry) {
    absorbed = true;
    for (int n = *rec.first_H_entry; n <= budget; ++n) {
      if (!in_h[n]) {
        absorbed = false;
        break;
      }
    }
  }

  bool in_i = true;
  for (int n = 1; n <= horizon; ++n) {
    if (rec.steps[n].conditions == kCondNone) {
      in_i = false;
      break;
    }
  }

  if (absorbed) {
    rec.classification = OrbitClass::kAbsorbed;
  } else if (in_i) {
    rec.classification = OrbitClass::kInIHorizon;
  } else if (std::fabs(rec.steps[budget].log_modulus) >= kSwitchHi) {
    rec.classification = OrbitClass::kEscapingUnclassified;
  } else {
    rec.classification = OrbitClass::kBoundedOrUnknown;
  }
  return rec;
}

OrbitRecord classify_orbit(const MapParams& params, CPoint z, int budget,
                           int horizon) {
  if (params.lambda() < 2.0) {
    throw std::invalid_argument("classify_orbit: needs lambda >= 2");
  }
  const FLambdaMap map(params);
  return classify_orbit(map, z, budget, horizon);
}

std::optional<int> first_entry_time(const PointMap& map, CPoint z, int budget) {
  Stepper st(map, z);
  if (st.in_H()) return 0;
  for (int n = 1; n <= budget; ++n) {
    st.advance();
    if (st.in_H()) return n;
  }
  return std::nullopt;
}

std::optional<int> first_entry_time(const MapParams& params, CPoint z,
                                    int budget) {
  const FLambdaMap map(params);
  return first_entry_time(map, z, budget);
}

bool in_i_horizon(const PointMap& map, CPoint z, int horizon) {
  const int budget = horizon + 2;
  Stepper st(map, z);
  std::vector<double> lm(budget + 1);
  std::vector<char> in_h(budget + 1, 0);
  lm[0] = st.log_modulus();
  in_h[0] = st.in_H() ? 1 : 0;
  for (int n = 1; n <= budget; ++n) {
    st.advance();
    lm[n] = st.log_modulus();
    in_h[n] = st.in_H() ? 1 : 0;
  }
  for (int n = 1; n <= horizon; ++n) {
    const bool big = lm[n] >= std::log(0.5 * n);
    const bool small = lm[n] <= std::log(2.0 / n);
    if (!big && !small && !in_h[n + 2]) return false;
  }
  return true;
}

void entry_time_color(std::optional<int> entry, std::uint8_t* rgb) {
  if (!entry) {
    rgb[0] = rgb[1] = rgb[2] = 128;
    return;
  }
  const int k = *entry % 16;
  rgb[0] = 255;
  rgb[1] = static_cast<std::uint8_t>(15 * k);
  rgb[2] = static_cast<std::uint8_t>(15 * k);
}

Image render_h_entry(const MapParams& params, const GridSpec& grid, int budget,
                     int threads) {
  if (params.lambda() < 2.0) {
    throw std::invalid_argument("render_h_entry: needs lambda >= 2");
  }
  Image im = Image::blank(grid.width, grid.height);
  par::for_rows(grid.height, threads, [&](int row) {
    const FLambdaMap map(params);
    for (int col = 0; col < grid.width; ++col) {
      const CPoint z = grid.cell_center(row, col);
      std::uint8_t* px = im.px(row, col);
      if (z.x == 0.0 && z.y == 0.0) {
        px[0] = 0;
        px[1] = 0;
        px[2] = 160;  // sentinel: not a point of C*
        continue;
      }
      entry_time_color(first_entry_time(map, z, budget), px);
    }
  });
  return im;
}

RasterSet render_i_complement(const MapParams& params, const GridSpec& grid,
                              int horizon, int threads) {
  if (params.lambda() < 2.0) {
    throw std::invalid_argument("render_i_complement: needs lambda >= 2");
  }
  RasterSet r = RasterSet::blank(grid);
  par::for_rows(grid.height, threads, [&](int row) {
    const FLambdaMap map(params);
    for (int col = 0; col < grid.width; ++col) {
      const CPoint z = grid.cell_center(row, col);
      if (z.x == 0.0 && z.y == 0.0) {
        r.set(row, col, true);  // sentinel: counted with the complement
        continue;
      }
      r.set(row, col, !in_i_horizon(map, z, horizon));
    }
  });
  return r;
}

}  // namespace cstar
