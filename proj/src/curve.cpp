#include "cstar/curve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>

namespace cstar {

namespace {

constexpr double kPi = 3.141592653589793238462643;

// Zero field values count as positive so that each cell has an even number
// of crossed edges.
inline bool positive(double v) { return !(v < 0.0); }

struct FieldSpec {
  // Field whose zero set is traced; sign-true everywhere (prefactors of
  // constant sign may be dropped by callers).
  std::function<double(double, double)> field;
  // Acceptance test for a refined vertex.
  std::function<bool(double, double)> within_tol;
};

struct VertexRec {
  double x, y, residual;
};

struct Tracer {
  const FieldSpec& spec;
  const TraceRequest& req;
  double dx, dy;

  Tracer(const FieldSpec& s, const TraceRequest& r)
      : spec(s),
        req(r),
        dx((r.window.x1 - r.window.x0) / r.nx),
        dy((r.window.y1 - r.window.y0) / r.ny) {
    if (r.nx < 2 || r.ny < 2 || !(dx > 0.0) || !(dy > 0.0)) {
      throw std::invalid_argument("trace: bad window or resolution");
    }
  }

  std::vector<double> node;  // (nx+1) x (ny+1) field values
  std::map<long, int> edge_vertex;
  std::vector<VertexRec> vertices;
  std::vector<std::vector<int>> adj;

  double node_x(int i) const { return req.window.x0 + i * dx; }
  double node_y(int j) const { return req.window.y0 + j * dy; }
  double node_v(int i, int j) const {
    return node[static_cast<size_t>(j) * (req.nx + 1) + i];
  }

  // Edge ids: horizontal edge (i, j)-(i+1, j) and vertical (i, j)-(i, j+1).
  long h_edge(int i, int j) const {
    return static_cast<long>(j) * req.nx + i;
  }
  long v_edge(int i, int j) const {
    const long base = static_cast<long>(req.nx) * (req.ny + 1);
    return base + static_cast<long>(j) * (req.nx + 1) + i;
  }

  int vertex_on(long edge, double xa, double ya, double xb, double yb,
                double va) {
    const auto it = edge_vertex.find(edge);
    if (it != edge_vertex.end()) return it->second;
    // Bisect along the edge.
    double ta = 0.0, tb = 1.0;
    const bool apos = positive(va);
    double vm = va;
    double tm = 0.0;
    for (int k = 0; k < 80; ++k) {
      tm = 0.5 * (ta + tb);
      const double x = xa + tm * (xb - xa);
      const double y = ya + tm * (yb - ya);
      vm = spec.field(x, y);
      if (spec.within_tol(x, y)) break;
      if (positive(vm) == apos) ta = tm;
      else tb = tm;
    }
    const double x = xa + tm * (xb - xa);
    const double y = ya + tm * (yb - ya);
    const int id = static_cast<int>(vertices.size());
    vertices.push_back({x, y, vm});
    adj.emplace_back();
    edge_vertex.emplace(edge, id);
    return id;
  }

  std::vector<CurvePolyline> run() {
    const int nx = req.nx;
    const int ny = req.ny;
    node.resize(static_cast<size_t>(nx + 1) * (ny + 1));
    for (int j = 0; j <= ny; ++j) {
      for (int i = 0; i <= nx; ++i) {
        node[static_cast<size_t>(j) * (nx + 1) + i] =
            spec.field(node_x(i), node_y(j));
      }
    }

    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        if (req.cell_filter && !req.cell_filter(j, i)) continue;
        const double v00 = node_v(i, j);
        const double v10 = node_v(i + 1, j);
        const double v11 = node_v(i + 1, j + 1);
        const double v01 = node_v(i, j + 1);
        const bool s00 = positive(v00), s10 = positive(v10);
        const bool s11 = positive(v11), s01 = positive(v01);
        int crossings = 0;
        crossings += s00 != s10;  // bottom
        crossings += s10 != s11;  // right
        crossings += s01 != s11;  // top
        crossings += s00 != s01;  // left
        if (crossings == 0) continue;
        if (crossings == 4) {
          char msg[128];
          std::snprintf(msg, sizeof(msg),
                        "two branches share cell (%d,%d); refine the grid", i, j);
          throw ResolutionTooCoarse(msg);
        }
        int ends[2];
        int n_ends = 0;
        if (s00 != s10) {
          ends[n_ends++] = vertex_on(h_edge(i, j), node_x(i), node_y(j),
                                     node_x(i + 1), node_y(j), v00);
        }
        if (s10 != s11) {
          ends[n_ends++] = vertex_on(v_edge(i + 1, j), node_x(i + 1), node_y(j),
                                     node_x(i + 1), node_y(j + 1), v10);
        }
        if (s01 != s11) {
          ends[n_ends++] = vertex_on(h_edge(i, j + 1), node_x(i), node_y(j + 1),
                                     node_x(i + 1), node_y(j + 1), v01);
        }
        if (n_ends < 2 && s00 != s01) {
          ends[n_ends++] = vertex_on(v_edge(i, j), node_x(i), node_y(j),
                                     node_x(i), node_y(j + 1), v00);
        }
        adj[ends[0]].push_back(ends[1]);
        adj[ends[1]].push_back(ends[0]);
      }
    }
    return stitch();
  }

  std::vector<CurvePolyline> stitch() {
    const int n = static_cast<int>(vertices.size());
    std::vector<char> used(n, 0);
    std::vector<CurvePolyline> out;
    const auto walk = [&](int start) {
      CurvePolyline poly;
      int prev = -1;
      int cur = start;
      while (true) {
        used[cur] = 1;
        poly.points.push_back({vertices[cur].x, vertices[cur].y});
        poly.residuals.push_back(vertices[cur].residual);
        int next = -1;
        for (int nb : adj[cur]) {
          if (nb != prev && !used[nb]) {
            next = nb;
            break;
          }
        }
        if (next < 0) {
          // Either an open end or loop closure.
          for (int nb : adj[cur]) {
            if (nb == start && poly.points.size() > 2) poly.closed = true;
          }
          break;
        }
        prev = cur;
        cur = next;
      }
      return poly;
    };
    for (int v = 0; v < n; ++v) {
      if (!used[v] && adj[v].size() == 1) out.push_back(walk(v));
    }
    for (int v = 0; v < n; ++v) {
      if (!used[v] && !adj[v].empty()) out.push_back(walk(v));
    }
    return out;
  }
};

// Scale-free residual with the sign and zeros of Im f: x sin(zeta) + y cos(zeta).
double im_residual(CPoint z) {
  const XiZeta xz = xi_zeta(z);
  return z.x * std::sin(xz.zeta) + z.y * std::cos(xz.zeta);
}

double re_residual(CPoint z) {
  const XiZeta xz = xi_zeta(z);
  return z.x * std::cos(xz.zeta) - z.y * std::sin(xz.zeta);
}

bool preimage_vertex_ok(const MapParams& params, double x, double y) {
  const ReImParts p = re_im_parts(params, {x, y});
  if (p.status == EvalStatus::kOk) {
    return std::fabs(p.im) <= 1e-10 * std::fmax(1.0, std::fabs(p.re));
  }
  // |f| out of double range: the prefactor drops out of the ratio.
  const double s = im_residual({x, y});
  const double c = re_residual({x, y});
  return std::fabs(s) <= 1e-10 * std::fabs(c);
}

int median_branch(const CurvePolyline& poly) {
  std::vector<double> qs;
  qs.reserve(poly.points.size());
  for (const CPoint& p : poly.points) qs.push_back(preimage_q(p));
  std::nth_element(qs.begin(), qs.begin() + qs.size() / 2, qs.end());
  return static_cast<int>(std::floor(qs[qs.size() / 2] / kPi));
}

std::vector<CurvePolyline> trace_im_zero(const MapParams& params,
                                         const TraceRequest& req) {
  FieldSpec spec;
  spec.field = [](double x, double y) { return im_residual({x, y}); };
  spec.within_tol = [&params](double x, double y) {
    return preimage_vertex_ok(params, x, y);
  };
  Tracer tracer(spec, req);
  std::vector<CurvePolyline> polys = tracer.run();
  for (CurvePolyline& p : polys) {
    const size_t mid = p.points.size() / 2;
    const double re = re_residual(p.points[mid]);
    p.kind = re > 0.0 ? CurveKind::kPreimageRPlus : CurveKind::kPreimageRMinus;
    p.branch = median_branch(p);
  }
  return polys;
}

}  // namespace

double preimage_q(CPoint z) {
  return -xi_zeta(z).zeta;
}

std::vector<CurvePolyline> trace_preimage_rplus(const MapParams& params,
                                                const TraceRequest& req) {
  std::vector<CurvePolyline> polys = trace_im_zero(params, req);
  std::erase_if(polys, [](const CurvePolyline& p) {
    return p.kind != CurveKind::kPreimageRPlus;
  });
  return polys;
}

std::vector<CurvePolyline> trace_real_line_preimages(const MapParams& params,
                                                     const TraceRequest& req) {
  return trace_im_zero(params, req);
}

std::vector<CurvePolyline> trace_barrier(const TraceRequest& req) {
  FieldSpec spec;
  spec.field = [](double x, double y) {
    return x * std::sin(y) + y * std::cos(y);
  };
  spec.within_tol = [](double x, double y) {
    return std::fabs(x * std::sin(y) + y * std::cos(y)) <= 1e-10;
  };
  Tracer tracer(spec, req);
  std::vector<CurvePolyline> polys = tracer.run();
  for (CurvePolyline& p : polys) {
    p.kind = CurveKind::kBarrier;
    // Asymptotic index from the leftmost vertex.
    size_t arg = 0;
    for (size_t i = 1; i < p.points.size(); ++i) {
      if (p.points[i].x < p.points[arg].x) arg = i;
    }
    p.branch = static_cast<int>(std::lround(p.points[arg].y / kPi));
  }
  return polys;
}

CurvePolyline approx_A_n(int n, int points) {
  if (n == 0) throw std::invalid_argument("approx_A_n: n must be nonzero");
  CurvePolyline out;
  out.kind = CurveKind::kANCircle;
  out.branch = n;
  out.closed = true;
  const double p = 1.0 / (2.0 * n * kPi);
  const double radius = std::fabs(p);
  out.points.reserve(points);
  out.residuals.assign(points, 0.0);
  for (int k = 0; k < points; ++k) {
    const double t = (k + 0.5) * 2.0 * kPi / points;  // skips z = 0 exactly
    out.points.push_back({radius * std::sin(t), p - p * std::cos(t)});
  }
  return out;
}

ANPrimeResult approx_A_n_prime(int n, const MapParams& params,
                               const TraceRequest& req) {
  if (n == 0) throw std::invalid_argument("approx_A_n_prime: n must be nonzero");
  if (!(req.window.x1 < 0.0)) {
    throw std::invalid_argument("approx_A_n_prime: window must lie in the left half-plane");
  }
  (void)params;
  const double npi = n * kPi;
  const auto field = [npi](double x, double y) {
    return std::sin(y + std::atan(y / x)) - std::exp(x) * std::hypot(x, y) * npi;
  };
  FieldSpec spec;
  spec.field = field;
  spec.within_tol = [field](double x, double y) {
    return std::fabs(field(x, y)) <= 1e-10;
  };
  Tracer tracer(spec, req);
  std::vector<CurvePolyline> polys = tracer.run();
  ANPrimeResult res;
  if (polys.empty()) return res;
  // Keep the longest component in the window.
  size_t best = 0;
  for (size_t i = 1; i < polys.size(); ++i) {
    if (polys[i].points.size() > polys[best].points.size()) best = i;
  }
  res.curve = std::move(polys[best]);
  res.curve.kind = CurveKind::kANPrime;
  double rightmost = req.window.x0;
  double left_x = req.window.x1;
  for (const CPoint& p : res.curve.points) {
    rightmost = std::fmax(rightmost, p.x);
    left_x = std::fmin(left_x, p.x);
  }
  res.rightmost_x = rightmost;
  // Lower asymptote index: smallest y among the vertices at the far left.
  const double dx = (req.window.x1 - req.window.x0) / req.nx;
  double left_y = std::numeric_limits<double>::infinity();
  for (const CPoint& p : res.curve.points) {
    if (p.x <= left_x + dx) left_y = std::fmin(left_y, p.y);
  }
  res.curve.branch = static_cast<int>(std::lround(left_y / kPi));
  return res;
}

std::optional<ChannelId> channel_membership(CPoint z, double R) {
  if (!(R >= 1.0)) throw std::invalid_argument("channel_membership: R must be >= 1");
  const double x = z.x;
  const double y = z.y;
  const double mod2 = x * x + y * y;
  constexpr double kEps0 = 0.25;
  if (x > 0.0 && std::fabs(y) < kEps0 * x && mod2 < 1.0 / (R * R)) {
    return ChannelId{ChannelTag::kPlus, 0, R};
  }
  if (x < 0.0 && std::fabs(y) < -kEps0 * x && mod2 < 1.0 / (R * R)) {
    return ChannelId{ChannelTag::kMinus, 0, R};
  }
  const long n = std::lround(y / kPi);
  if (std::fabs(y - n * kPi) < kEps0 && x < -R * (std::labs(n) + 1)) {
    return ChannelId{ChannelTag::kHoriz, static_cast<int>(n), R};
  }
  return std::nullopt;
}

double rel_hausdorff_to_circle(const CurvePolyline& c, double center_im,
                               double radius) {
  double worst = 0.0;
  for (const CPoint& p : c.points) {
    const double d = std::fabs(std::hypot(p.x, p.y - center_im) - radius);
    worst = std::fmax(worst, d);
  }
  return worst / radius;
}

CircleGap unit_circle_equation_gap(int samples) {
  CircleGap out;
  out.min_gap = std::numeric_limits<double>::infinity();
  for (int k = 0; k < samples; ++k) {
    const double th = kPi * (k + 0.5) / samples;
    const double s = std::exp(-std::cos(th)) * std::sin(std::sin(th) + th) - th;
    const double gap = std::fabs(s - kPi * std::round(s / kPi));
    if (gap < out.min_gap) {
      out.min_gap = gap;
      out.at_theta = th;
    }
  }
  return out;
}

std::string curves_csv(const std::vector<CurvePolyline>& curves) {
  std::string out = "kind,branch,x,y,residual\n";
  char line[160];
  for (const CurvePolyline& c : curves) {
    const char* kind = "barrier";
    switch (c.kind) {
      case CurveKind::kPreimageRPlus: kind = "preimage_rplus"; break;
      case CurveKind::kPreimageRMinus: kind = "preimage_rminus"; break;
      case CurveKind::kBarrier: kind = "barrier"; break;
      case CurveKind::kANCircle: kind = "a_n_circle"; break;
      case CurveKind::kANPrime: kind = "a_n_prime"; break;
    }
    for (size_t i = 0; i < c.points.size(); ++i) {
      if (c.branch) {
        std::snprintf(line, sizeof(line), "%s,%d,%.17g,%.17g,%.17g\n", kind,
                      *c.branch, c.points[i].x, c.points[i].y, c.residuals[i]);
      } else {
        std::snprintf(line, sizeof(line), "%s,,%.17g,%.17g,%.17g\n", kind,
                      c.points[i].x, c.points[i].y, c.residuals[i]);
      }
      out += line;
    }
  }
  return out;
}

}  // namespace cstar
