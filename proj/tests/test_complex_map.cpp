#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>

#include "cstar/complex_map.hpp"

using namespace cstar;

namespace {

constexpr double kPi = 3.141592653589793238462643;

// High-precision reference values (60-digit arithmetic, rounded here).
constexpr double kF2At1 = 2.889335722019532267316678;        // 2 e^{1/e}
constexpr double kF2AtM1 = -0.1319760716906250741535804;     // -2 e^{-e}
constexpr double kLift2At0 = 1.061026621731387631012756;     // ln 2 + 1/e
constexpr double kFix32A = -0.4546103155764106693258639;     // nearest to 0
constexpr double kFix32B = -1.867555173464895957980035;
constexpr double kDFix32A = 2.890176610323446328161991;      // 1 + ln32 (x+1)
constexpr double kDFix32B = -2.006717112336934561547907;
constexpr double kCrit = 0.8064659942363268087699282;        // e^x = 1 + 1/x
constexpr double kF2At1PlusIRe = 2.307200733416901147493585;
constexpr double kF2At1PlusIIm = 1.355659049601821974014339;

// Test-only second route: straight complex arithmetic.
Cplx direct_eval(double lambda, Cplx z) {
  return lambda * z * std::exp(std::exp(-z) / z);
}

double rel_err(double got, double want) {
  return std::fabs(got - want) / std::fmax(1e-300, std::fabs(want));
}

}  // namespace

TEST_CASE("eval matches high-precision references") {
  const MapParams p2(2.0);
  const EvalResult a = eval(p2, {1.0, 0.0});
  REQUIRE(a.ok());
  CHECK(rel_err(a.value.x, kF2At1) < 1e-14);
  CHECK(a.value.y == 0.0);

  const EvalResult b = eval(p2, {-1.0, 0.0});
  REQUIRE(b.ok());
  CHECK(rel_err(b.value.x, kF2AtM1) < 1e-14);
  CHECK(b.value.y == 0.0);

  const EvalResult c = eval(p2, {1.0, 1.0});
  REQUIRE(c.ok());
  CHECK(rel_err(c.value.x, kF2At1PlusIRe) < 1e-13);
  CHECK(rel_err(c.value.y, kF2At1PlusIIm) < 1e-13);
}

TEST_CASE("eval rejects the puncture") {
  const MapParams p(2.0);
  CHECK_THROWS_AS(eval(p, {0.0, 0.0}), std::domain_error);
  CHECK_THROWS_AS(derivative(p, {0.0, 0.0}), std::domain_error);
}

TEST_CASE("conjugation symmetry is exact") {
  const MapParams p(2.0);
  std::mt19937_64 rng(20240811);
  std::uniform_real_distribution<double> coord(-8.0, 8.0);
  for (int i = 0; i < 100000; ++i) {
    const CPoint z{coord(rng), coord(rng)};
    if (z.x == 0.0 && z.y == 0.0) continue;
    const EvalResult f = eval(p, z);
    const EvalResult g = eval(p, {z.x, -z.y});
    REQUIRE(f.status == g.status);
    if (f.ok()) {
      REQUIRE(f.value.x == g.value.x);
      REQUIRE(f.value.y == -g.value.y);
    }
  }
}

TEST_CASE("negative real axis is forward invariant with exact reality") {
  const MapParams p(32.0);
  for (int i = 1; i <= 2000; ++i) {
    const double x = -40.0 * i / 2000.0;
    const EvalResult f = eval(p, {x, 0.0});
    if (!f.ok()) continue;  // points far left leave the double range
    REQUIRE(f.value.y == 0.0);
    REQUIRE(f.value.x < 0.0);
  }
}

TEST_CASE("positive real axis maps into H") {
  for (double lambda : {2.0, 32.0}) {
    const MapParams p(lambda);
    double worst = 1e308;
    for (int i = 1; i <= 20000; ++i) {
      const double x = 1e-3 * std::pow(2e4, i / 20000.0);
      const EvalResult f = eval(p, {x, 0.0});
      if (!f.ok()) continue;
      worst = std::fmin(worst, f.value.x);
    }
    CHECK(worst >= 2.0);
  }
}

TEST_CASE("modulus identity against the fsize formula") {
  const MapParams p(2.0);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coord(-6.0, 6.0);
  int checked = 0;
  while (checked < 10000) {
    const CPoint z{coord(rng), coord(rng)};
    if (std::hypot(z.x, z.y) < 1e-3) continue;
    const EvalResult f = eval(p, z);
    if (!f.ok()) continue;
    const double r2 = z.x * z.x + z.y * z.y;
    const double fsize =
        p.lambda() * std::sqrt(r2) *
        std::exp(std::exp(-z.x) / r2 * (z.x * std::cos(z.y) - z.y * std::sin(z.y)));
    const double got = std::hypot(f.value.x, f.value.y);
    REQUIRE(rel_err(got, fsize) < 1e-12);
    ++checked;
  }
}

TEST_CASE("re_im_parts agrees with eval and the direct complex route") {
  const MapParams p(2.0);
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> coord(-5.0, 5.0);
  int checked = 0;
  while (checked < 2000) {
    const CPoint z{coord(rng), coord(rng)};
    if (std::hypot(z.x, z.y) < 1e-2) continue;
    const ReImParts parts = re_im_parts(p, z);
    const EvalResult f = eval(p, z);
    REQUIRE(parts.status == f.status);
    if (!f.ok()) continue;
    REQUIRE(parts.re == f.value.x);
    REQUIRE(parts.im == f.value.y);
    const Cplx d = direct_eval(2.0, z.cplx());
    REQUIRE(std::abs(d - f.value.cplx()) <= 1e-12 * std::abs(d));
    ++checked;
  }
  // Real inputs have exactly vanishing zeta and imaginary part.
  const ReImParts real_pt = re_im_parts(p, {1.7, 0.0});
  CHECK(real_pt.xz.zeta == 0.0);
  CHECK(real_pt.im == 0.0);
}

TEST_CASE("overflow and underflow are tagged, not propagated") {
  const MapParams p(32.0);
  const EvalResult over = eval(p, {1e-8, 0.0});  // e^{1/z} far beyond range
  CHECK(over.status == EvalStatus::kOverflow);
  CHECK(over.log_modulus > 709.0);

  const EvalResult under = eval(p, {-740.0, 0.0});
  CHECK(under.status == EvalStatus::kUnderflow);
  CHECK(under.log_modulus < -708.0);
}

TEST_CASE("eval_log matches the reference at w = 0 and projects onto eval") {
  const MapParams p(2.0);
  const Cplx l = eval_log(p, Cplx(0.0, 0.0));
  CHECK(rel_err(l.real(), kLift2At0) < 1e-14);
  CHECK(l.imag() == 0.0);
  CHECK(rel_err(std::exp(l.real()), kF2At1) < 1e-13);
}

TEST_CASE("lift consistency on random bounded w") {
  const MapParams p(2.0);
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> coord(-5.0, 5.0);
  int checked = 0;
  for (int i = 0; i < 10000; ++i) {
    const Cplx w(coord(rng), coord(rng));
    const Cplx z = std::exp(w);
    const EvalResult f = eval(p, CPoint::from(z));
    if (!f.ok()) continue;
    // Skip the sliver where the exponent e^{-z}/z is so large that its own
    // rounding noise (eps |x| relative, amplified by exp) exceeds the
    // bound in every evaluation route.
    const XiZeta xz = xi_zeta(CPoint::from(z));
    const double cond = (std::fabs(xz.xi) + std::fabs(xz.zeta)) *
                        (1.0 + std::fabs(z.real()));
    if (cond > 1e4) continue;
    const Cplx lifted = std::exp(eval_log(p, w));
    REQUIRE(std::abs(lifted - f.value.cplx()) <= 1e-10 * std::abs(f.value.cplx()));
    ++checked;
  }
  CHECK(checked > 8000);
}

TEST_CASE("eval_log tail vanishes for large Re e^w") {
  const MapParams p(2.0);
  const Cplx w(5.0, 0.0);
  const Cplx l = eval_log(p, w);
  CHECK(std::abs(l - (w + Cplx(p.log_lambda(), 0.0))) < 1e-50);
  // Far right: the flush guard path.
  const Cplx wr(800.0, 0.1);
  CHECK(eval_log(p, wr) == wr + Cplx(p.log_lambda(), 0.0));
}

TEST_CASE("the lift fixes the log image of a fixed point") {
  const MapParams p(32.0);
  const Cplx w(std::log(-kFix32A), kPi);
  const Cplx l = eval_log(p, w);
  CHECK(std::abs(l - w) < 1e-12);

  const LogPoint lp{std::log(-kFix32A), kPi};
  const LogPoint out = eval_log(p, lp);
  CHECK(std::fabs(out.rho - lp.rho) < 1e-12);
  CHECK(std::fabs(out.theta - lp.theta) < 1e-12);
}

TEST_CASE("fixed points on the negative axis") {
  const MapParams p32(32.0);
  const std::vector<double> fp = fixed_points_negative_axis(p32);
  REQUIRE(fp.size() == 2);
  CHECK(std::fabs(fp[0] - kFix32A) < 1e-11);
  CHECK(std::fabs(fp[1] - kFix32B) < 1e-11);
  for (const double x : fp) {
    const EvalResult f = eval(p32, {x, 0.0});
    REQUIRE(f.ok());
    CHECK(std::fabs(f.value.x - x) <= 1e-10);
    CHECK(f.value.y == 0.0);
  }

  CHECK(fixed_points_negative_axis(MapParams(2.0)).empty());

  const std::vector<double> tangency =
      fixed_points_negative_axis(MapParams(std::exp(std::exp(1.0))));
  REQUIRE(tangency.size() == 1);
  CHECK(std::fabs(tangency[0] + 1.0) < 1e-9);
}

TEST_CASE("derivative at distinguished points and against finite differences") {
  const MapParams p32(32.0);
  const double xc = critical_point_positive_axis();
  CHECK(std::fabs(xc - kCrit) < 1e-11);
  const DerivResult dc = derivative(p32, {xc, 0.0});
  REQUIRE(dc.status == EvalStatus::kOk);
  CHECK(std::hypot(dc.value.x, dc.value.y) < 1e-8);

  const DerivResult d1 = derivative(p32, {kFix32A, 0.0});
  REQUIRE(d1.status == EvalStatus::kOk);
  CHECK(std::fabs(d1.value.x - kDFix32A) < 1e-9);
  CHECK(std::hypot(d1.value.x, d1.value.y) > 1.0);
  const DerivResult d2 = derivative(p32, {kFix32B, 0.0});
  REQUIRE(d2.status == EvalStatus::kOk);
  CHECK(std::fabs(d2.value.x - kDFix32B) < 1e-9);

  // Central finite differences, step 1e-6 max(1, |z|).
  const MapParams p2(2.0);
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> coord(-4.0, 4.0);
  int checked = 0;
  while (checked < 1000) {
    const CPoint z{coord(rng), coord(rng)};
    if (std::hypot(z.x, z.y) < 0.05) continue;
    const DerivResult d = derivative(p2, z);
    if (d.status != EvalStatus::kOk) continue;
    const double mag = std::hypot(d.value.x, d.value.y);
    if (mag < 1e-3) continue;  // stay away from critical points
    const double h = 1e-6 * std::fmax(1.0, std::hypot(z.x, z.y));
    const EvalResult fx1 = eval(p2, {z.x + h, z.y});
    const EvalResult fx0 = eval(p2, {z.x - h, z.y});
    if (!fx1.ok() || !fx0.ok()) continue;
    const Cplx fd = (fx1.value.cplx() - fx0.value.cplx()) / (2.0 * h);
    REQUIRE(std::abs(fd - d.value.cplx()) <= 1e-5 * mag);
    ++checked;
  }
  const DerivResult dref = derivative(p2, {2.0, 3.0});
  const double h = 1e-6 * std::hypot(2.0, 3.0);
  const Cplx fd = (eval(p2, {2.0 + h, 3.0}).value.cplx() -
                   eval(p2, {2.0 - h, 3.0}).value.cplx()) /
                  (2.0 * h);
  CHECK(std::abs(fd - dref.value.cplx()) <=
        1e-5 * std::abs(dref.value.cplx()));
}

TEST_CASE("xi_zeta matches direct complex evaluation on the overlap") {
  std::mt19937_64 rng(31337);
  std::uniform_real_distribution<double> coord(-5.0, 5.0);
  for (int i = 0; i < 5000; ++i) {
    const CPoint z{coord(rng), coord(rng)};
    if (std::hypot(z.x, z.y) < 1e-2) continue;
    const XiZeta xz = xi_zeta(z);
    const Cplx d = std::exp(-z.cplx()) / z.cplx();
    REQUIRE(std::fabs(xz.xi - d.real()) <= 1e-12 * std::fmax(1.0, std::abs(d)));
    REQUIRE(std::fabs(xz.zeta - d.imag()) <= 1e-12 * std::fmax(1.0, std::abs(d)));
  }
}

TEST_CASE("ZExpMap: fixed point of g and escaping lift orbit") {
  const ZExpMap g;
  const EvalResult f1 = g.eval({1.0, 0.0});
  REQUIRE(f1.ok());
  CHECK(std::fabs(f1.value.x - 1.0) < 1e-15);
  CHECK(f1.value.y == 0.0);

  // The lift derivative along the orbit is 2, so float drift doubles per
  // step; the bound tracks that.
  Cplx w(0.0, 0.0);
  for (int n = 1; n <= 40; ++n) {
    w = g.eval_log(w);
    CHECK(std::abs(w - Cplx(0.0, 2.0 * kPi * n)) < std::ldexp(1e-14, n));
  }
}

TEST_CASE("MapParams validation") {
  CHECK_THROWS_AS(MapParams(0.0), std::invalid_argument);
  CHECK_THROWS_AS(MapParams(-3.0), std::invalid_argument);
  CHECK_THROWS_AS(MapParams(std::numeric_limits<double>::infinity()),
                  std::invalid_argument);
}
