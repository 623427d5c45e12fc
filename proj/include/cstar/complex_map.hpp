#ifndef CSTAR_COMPLEX_MAP_HPP
#define CSTAR_COMPLEX_MAP_HPP

#include <complex>
#include <vector>

namespace cstar {

using Cplx = std::complex<double>;

// Point of C* in Cartesian coordinates.
struct CPoint {
  double x = 0.0;
  double y = 0.0;

  Cplx cplx() const { return {x, y}; }
  static CPoint from(Cplx z) { return {z.real(), z.imag()}; }
};

// Point of C* in log coordinates: rho = ln|z|, theta = arg z.
// This is the overflow-safe representation; `plane()` views it as a point
// of the lift plane, where the lifted map acts.
struct LogPoint {
  double rho = 0.0;
  double theta = 0.0;

  Cplx plane() const { return {rho, theta}; }
};

// Real and imaginary parts of e^{-z}/z.
struct XiZeta {
  double xi = 0.0;
  double zeta = 0.0;
};

// One member of the family f(z) = lambda * z * exp(e^{-z}/z), lambda > 0.
class MapParams {
 public:
  explicit MapParams(double lambda);

  double lambda() const { return lambda_; }
  double log_lambda() const { return log_lambda_; }

 private:
  double lambda_;
  double log_lambda_;
};

enum class EvalStatus { kOk, kOverflow, kUnderflow };

// Outcome of one map evaluation. `log_modulus` and `arg` are filled in even
// when the value itself left the double range, so callers can continue in
// log coordinates. `arg` is arg z + zeta, not reduced to a principal value.
struct EvalResult {
  EvalStatus status = EvalStatus::kOk;
  CPoint value{};
  double log_modulus = 0.0;
  double arg = 0.0;

  bool ok() const { return status == EvalStatus::kOk; }
};

struct ReImParts {
  EvalStatus status = EvalStatus::kOk;
  double re = 0.0;
  double im = 0.0;
  XiZeta xz{};
};

struct DerivResult {
  EvalStatus status = EvalStatus::kOk;
  CPoint value{};
};

// xi + i zeta = e^{-z}/z, evaluated without intermediate overflow where the
// result itself is representable. Either component may come out infinite
// when the true magnitude exceeds the double range.
XiZeta xi_zeta(CPoint z);

// f(z) = lambda * z * exp(e^{-z}/z). Throws std::domain_error for z = 0.
// Mirror symmetry f(conj z) = conj f(z) holds exactly: inputs in the lower
// half-plane are evaluated through their conjugates.
EvalResult eval(const MapParams& params, CPoint z);

// Real/imaginary decomposition through xi, zeta. Shares the evaluation core
// with eval(), so the two agree identically; the modulus identity
// |f| = lambda |z| e^xi is a genuinely independent route and is what tests
// check against.
ReImParts re_im_parts(const MapParams& params, CPoint z);

// Lift of f acting on the plane: w + ln lambda + exp(-w - e^w), with the
// tail flushed to zero when Re(-w - e^w) < -745. Satisfies
// exp(eval_log(w)) = eval(exp(w)) wherever eval is finite.
Cplx eval_log(const MapParams& params, Cplx w);

// The same lift on log coordinates of a point of C*.
inline LogPoint eval_log(const MapParams& params, LogPoint w) {
  const Cplx r = eval_log(params, w.plane());
  return {r.real(), r.imag()};
}

// f'(z) = lambda * exp(e^{-z}/z) * (1 - e^{-z}(z+1)/z).
DerivResult derivative(const MapParams& params, CPoint z);

// All real x < 0 with f(x) = x, nearest to zero first. Substituting x = -t
// reduces to e^t = t ln(lambda): no roots when ln lambda < e, a tangency
// root when ln lambda = e, two otherwise. Roots are bisected to 1e-12.
std::vector<double> fixed_points_negative_axis(const MapParams& params);

// The unique critical point of f on the positive real axis: the root of
// e^x = 1 + 1/x, close to 0.8.
double critical_point_positive_axis();

// Map interface used by the orbit engine, so tests can drive the engine
// with a second map.
class PointMap {
 public:
  virtual ~PointMap() = default;
  virtual EvalResult eval(CPoint z) const = 0;
  virtual Cplx eval_log(Cplx w) const = 0;
};

class FLambdaMap final : public PointMap {
 public:
  explicit FLambdaMap(MapParams params) : params_(params) {}
  EvalResult eval(CPoint z) const override { return cstar::eval(params_, z); }
  Cplx eval_log(Cplx w) const override { return cstar::eval_log(params_, w); }
  const MapParams& params() const { return params_; }

 private:
  MapParams params_;
};

// g(z) = z e^{z-1} with the lift choice g~(w) = w + e^w - 1 + 2 pi i.
// The lift sends 0 along 2 pi i n while 1 = exp(0) is a fixed point of g.
class ZExpMap final : public PointMap {
 public:
  EvalResult eval(CPoint z) const override;
  Cplx eval_log(Cplx w) const override;
};

}  // namespace cstar

#endif  // CSTAR_COMPLEX_MAP_HPP
