#include "cstar/complex_map.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cstar {

namespace {

// Tag results slightly inside the representable range so that finite values
// returned with kOk never round to infinity downstream.
constexpr double kLogMax = 709.0;
constexpr double kLogMin = -708.0;
constexpr double kTailFlush = -745.0;

double bisect_root(double lo, double hi, double flo, const auto& fn) {
  for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = fn(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

struct EvalCore {
  EvalStatus status;
  double log_modulus;
  double arg;      // arg z + zeta of the mirrored (upper half-plane) input
  double re, im;   // set only when status == kOk
  XiZeta xz;       // of the mirrored input
};

// Evaluation for y >= 0; eval() reflects the lower half-plane through this.
EvalCore eval_core_upper(const MapParams& p, double x, double y) {
  EvalCore out{};
  const XiZeta xz = xi_zeta({x, y});
  const double r2 = x * x + y * y;
  const double logmod = p.log_lambda() + 0.5 * std::log(r2) + xz.xi;
  const double ang = std::atan2(y, x) + xz.zeta;
  out.log_modulus = logmod;
  out.arg = ang;
  out.xz = xz;
  if (!(logmod <= kLogMax)) {
    out.status = EvalStatus::kOverflow;
    return out;
  }
  if (logmod < kLogMin) {
    out.status = EvalStatus::kUnderflow;
    return out;
  }
  out.status = EvalStatus::kOk;
  const double s = p.log_lambda() + xz.xi;
  if (s > -700.0 && s < 700.0) {
    const double m = std::exp(s);
    const double cz = std::cos(xz.zeta);
    const double sz = std::sin(xz.zeta);
    out.re = m * (x * cz - y * sz);
    out.im = m * (x * sz + y * cz);
  } else {
    // |e^xi| alone leaves the double range although |f| does not; go through
    // the log magnitude. Real inputs keep an exactly real image.
    const double m = std::exp(logmod);
    if (y == 0.0) {
      out.re = std::copysign(m, x);
      out.im = 0.0;
    } else {
      out.re = m * std::cos(ang);
      out.im = m * std::sin(ang);
    }
  }
  return out;
}

EvalCore eval_core(const MapParams& p, CPoint z) {
  if (z.x == 0.0 && z.y == 0.0) {
    throw std::domain_error("eval: z = 0 is not a point of C*");
  }
  if (z.y < 0.0) {
    EvalCore c = eval_core_upper(p, z.x, -z.y);
    c.arg = -c.arg;
    c.im = -c.im;
    c.xz.zeta = -c.xz.zeta;
    return c;
  }
  return eval_core_upper(p, z.x, z.y);
}

}  // namespace

MapParams::MapParams(double lambda) : lambda_(lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("MapParams: lambda must be finite and positive");
  }
  log_lambda_ = std::log(lambda);
}

XiZeta xi_zeta(CPoint z) {
  const double x = z.x;
  const double y = z.y;
  const double r2 = x * x + y * y;
  const double cy = std::cos(y);
  const double sy = std::sin(y);
  const double g = x * cy - y * sy;
  const double h = x * sy + y * cy;
  double q;
  if (-x <= 700.0) {
    q = std::exp(-x) / r2;
  } else {
    q = std::exp(-x - std::log(r2));
  }
  XiZeta out;
  out.xi = (g == 0.0) ? 0.0 : q * g;
  out.zeta = (h == 0.0) ? 0.0 : -q * h;
  return out;
}

EvalResult eval(const MapParams& params, CPoint z) {
  const EvalCore c = eval_core(params, z);
  EvalResult r;
  r.status = c.status;
  r.log_modulus = c.log_modulus;
  r.arg = c.arg;
  if (c.status == EvalStatus::kOk) {
    r.value = {c.re, c.im};
  }
  return r;
}

ReImParts re_im_parts(const MapParams& params, CPoint z) {
  const EvalCore c = eval_core(params, z);
  ReImParts r;
  r.status = c.status;
  r.xz = c.xz;
  if (c.status == EvalStatus::kOk) {
    r.re = c.re;
    r.im = c.im;
  }
  return r;
}

Cplx eval_log(const MapParams& params, Cplx w) {
  const double rw = w.real();
  const double iw = w.imag();
  double ure, uim;
  if (rw <= 709.0) {
    const double ew = std::exp(rw);
    ure = -rw - ew * std::cos(iw);
    uim = -iw - ew * std::sin(iw);
  } else {
    // e^w overflows; its real part decides the tail outright.
    const double c = std::cos(iw);
    if (c >= 0.0) {
      return w + Cplx(params.log_lambda(), 0.0);
    }
    ure = std::numeric_limits<double>::infinity();
    uim = 0.0;  // direction unknowable at this scale
  }
  if (ure < kTailFlush) {
    return w + Cplx(params.log_lambda(), 0.0);
  }
  const double et = std::exp(ure);
  const Cplx tail(et * std::cos(uim), et * std::sin(uim));
  return w + Cplx(params.log_lambda(), 0.0) + tail;
}

DerivResult derivative(const MapParams& params, CPoint z) {
  if (z.x == 0.0 && z.y == 0.0) {
    throw std::domain_error("derivative: z = 0 is not a point of C*");
  }
  const XiZeta xz = xi_zeta(z);
  DerivResult out;
  if (!std::isfinite(xz.xi) || !std::isfinite(xz.zeta)) {
    out.status = (xz.xi > 0.0) ? EvalStatus::kOverflow : EvalStatus::kUnderflow;
    return out;
  }
  const Cplx zc = z.cplx();
  const Cplx w(xz.xi, xz.zeta);
  const Cplx factor = 1.0 - std::exp(-zc) * (zc + 1.0) / zc;
  const Cplx v = params.lambda() * std::exp(w) * factor;
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    out.status = (xz.xi > 0.0) ? EvalStatus::kOverflow : EvalStatus::kUnderflow;
    return out;
  }
  out.value = CPoint::from(v);
  return out;
}

std::vector<double> fixed_points_negative_axis(const MapParams& params) {
  const double ll = params.log_lambda();
  if (ll <= 0.0) return {};
  const double tstar = std::log(ll);
  if (tstar <= 0.0) return {};  // phi(t) = e^t - t ll > 0 for all t > 0
  const double phimin = ll * (1.0 - tstar);
  const double eps = 8.0 * std::numeric_limits<double>::epsilon() * ll;
  if (phimin > eps) return {};
  if (phimin >= -eps) return {-tstar};

  const auto phi = [ll](double t) { return std::exp(t) - t * ll; };
  double tlo = 0.5 * tstar;
  while (phi(tlo) <= 0.0) tlo *= 0.5;
  double thi = 2.0 * tstar;
  while (phi(thi) <= 0.0) thi *= 2.0;
  const double t1 = bisect_root(tlo, tstar, phi(tlo), phi);
  const double t2 = bisect_root(tstar, thi, phi(tstar), phi);
  return {-t1, -t2};
}

double critical_point_positive_axis() {
  const auto fn = [](double x) { return std::exp(x) - 1.0 - 1.0 / x; };
  return bisect_root(0.05, 2.0, fn(0.05), fn);
}

EvalResult ZExpMap::eval(CPoint z) const {
  if (z.x == 0.0 && z.y == 0.0) {
    throw std::domain_error("eval: z = 0 is not a point of C*");
  }
  EvalResult r;
  r.log_modulus = 0.5 * std::log(z.x * z.x + z.y * z.y) + z.x - 1.0;
  r.arg = std::atan2(z.y, z.x) + z.y;
  if (r.log_modulus > 709.0) {
    r.status = EvalStatus::kOverflow;
    return r;
  }
  if (r.log_modulus < -708.0) {
    r.status = EvalStatus::kUnderflow;
    return r;
  }
  const Cplx v = z.cplx() * std::exp(z.cplx() - 1.0);
  r.value = CPoint::from(v);
  return r;
}

Cplx ZExpMap::eval_log(Cplx w) const {
  constexpr double kTwoPi = 6.283185307179586476925287;
  if (w.real() > 709.0) {
    // e^w overflows; hand back an explicit infinity in the dominant part.
    const double c = std::cos(w.imag());
    const double inf = std::numeric_limits<double>::infinity();
    return {std::copysign(inf, c), w.imag() + kTwoPi};
  }
  return w + std::exp(w) - 1.0 + Cplx(0.0, kTwoPi);
}

}  // namespace cstar
