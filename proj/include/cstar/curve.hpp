#ifndef CSTAR_CURVE_HPP
#define CSTAR_CURVE_HPP

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cstar/complex_map.hpp"

namespace cstar {

enum class CurveKind {
  kPreimageRPlus,
  kPreimageRMinus,
  kBarrier,
  kANCircle,
  kANPrime,
};

// One traced component of an implicit curve. Residuals are the defining
// field values at the refined vertices, parallel to points.
struct CurvePolyline {
  std::vector<CPoint> points;
  std::vector<double> residuals;
  std::optional<int> branch;
  CurveKind kind = CurveKind::kBarrier;
  bool closed = false;
};

struct Window {
  double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;
};

struct ResolutionTooCoarse : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ChannelTag { kPlus, kMinus, kHoriz };

struct ChannelId {
  ChannelTag tag = ChannelTag::kPlus;
  int n = 0;  // meaningful for kHoriz only
  double R = 1.0;
};

// Marching squares over nx x ny cells with per-edge bisection refinement.
// cell_filter (optional) restricts which cells are examined. A cell crossed
// on all four edges means two branches share it: ResolutionTooCoarse.
struct TraceRequest {
  Window window;
  int nx = 0;
  int ny = 0;
  std::function<bool(int, int)> cell_filter;  // (row=j, col=i) in cell units
};

// Preimages of the positive real axis: zeros of Im f with Re f > 0.
// Vertices satisfy |Im f| <= 1e-10 max(1, |Re f|). Branch indices follow
// the q/pi band of the curve, q = e^{-x}(x sin y + y cos y)/|z|^2.
std::vector<CurvePolyline> trace_preimage_rplus(const MapParams& params,
                                                const TraceRequest& req);

// Zeros of Im f of both signs of Re f (preimages of the full real line);
// the kind field tells the families apart.
std::vector<CurvePolyline> trace_real_line_preimages(const MapParams& params,
                                                     const TraceRequest& req);

// Zeros of x sin y + y cos y, refined to 1e-10 absolute.
std::vector<CurvePolyline> trace_barrier(const TraceRequest& req);

// The circle through 0 with center i/(2 n pi).
CurvePolyline approx_A_n(int n, int points = 720);

struct ANPrimeResult {
  CurvePolyline curve;
  double rightmost_x = 0.0;
};

// The curve sin(y + arctan(y/x)) = e^x |z| n pi, traced in a left
// half-plane window, with its rightmost extent.
ANPrimeResult approx_A_n_prime(int n, const MapParams& params,
                               const TraceRequest& req);

// Channel containing z at parameter R (epsilon_0 = 1/4), if any. Channels
// are pairwise disjoint, so at most one matches. Requires R >= 1.
std::optional<ChannelId> channel_membership(CPoint z, double R);

// q = e^{-x}(x sin y + y cos y)/|z|^2; preimage branches keep q/pi inside
// one unit band.
double preimage_q(CPoint z);

// max over vertices of ||p - center| - radius| / radius, center = i*center_im.
double rel_hausdorff_to_circle(const CurvePolyline& c, double center_im,
                               double radius);

struct CircleGap {
  double min_gap = 0.0;
  double at_theta = 0.0;
};

// Distance of e^{-cos t} sin(sin t + t) - t to the nearest multiple of pi,
// minimized over `samples` interior points of (0, pi).
CircleGap unit_circle_equation_gap(int samples);

// CSV export, header "kind,branch,x,y,residual".
std::string curves_csv(const std::vector<CurvePolyline>& curves);

}  // namespace cstar

#endif  // CSTAR_CURVE_HPP
