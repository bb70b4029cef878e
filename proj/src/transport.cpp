#include "geomlab/transport.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

#include "rk4_detail.hpp"

namespace geomlab {

namespace {

using detail::OdeSys;
using detail::State;

// layout: [x | v | Y_0..Y_{m-1} | W_0..W_{m-1} | F_0..F_{m-1}], x first as
// the driver requires
struct Layout {
  int n = 0, m = 0;
  int y(int a) const { return 2 * n + a * n; }
  int w(int a) const { return 2 * n + m * n + a * n; }
  int f(int b) const { return 2 * n + 2 * m * n + b * n; }
  int size() const { return 2 * n + 3 * m * n; }
};

OdeSys transport_system(const MetricField& mf, const Layout& lay) {
  const int n = lay.n, m = lay.m;
  OdeSys sys;
  sys.m = lay.size();
  sys.f = [&mf, n, m, lay](const double* y, double* dy) {
    Vec x;
    x.n = n;
    for (int i = 0; i < n; ++i) x[i] = y[i];
    Jet2 jet;
    if (!mf.jet2_at(x, jet)) {
      // same interface-sliver retry as the geodesic rhs
      for (int i = 0; i < n; ++i) x[i] += 1e-8 * y[n + i];
      if (!mf.jet2_at(x, jet)) return false;
    }
    std::array<Mat, kMaxDim> gamma;
    {
      Jet1 j1;
      j1.g = jet.g;
      j1.dg = jet.dg;
      christoffel_from_jet(j1, n, gamma);
    }
    auto dgam = std::make_unique<std::array<std::array<Mat, kMaxDim>, kMaxDim>>();
    dchristoffel_from_jet(jet, n, *dgam);

    const double* v = y + n;
    for (int i = 0; i < n; ++i) dy[i] = v[i];
    for (int k = 0; k < n; ++k) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) acc -= gamma[static_cast<std::size_t>(k)](i, j) * v[i] * v[j];
      dy[n + k] = acc;
    }
    for (int a = 0; a < m; ++a) {
      const double* Y = y + lay.y(a);
      const double* W = y + lay.w(a);
      double* dY = dy + lay.y(a);
      double* dW = dy + lay.w(a);
      for (int i = 0; i < n; ++i) dY[i] = W[i];
      for (int k = 0; k < n; ++k) {
        double acc = 0.0;
        for (int l = 0; l < n; ++l) {
          const Mat& dG = (*dgam)[static_cast<std::size_t>(l)][static_cast<std::size_t>(k)];
          double c = 0.0;
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) c += dG(i, j) * v[i] * v[j];
          acc -= c * Y[l];
        }
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            acc -= 2.0 * gamma[static_cast<std::size_t>(k)](i, j) * W[i] * v[j];
        dW[k] = acc;
      }
    }
    for (int b = 0; b < m; ++b) {
      const double* F = y + lay.f(b);
      double* dF = dy + lay.f(b);
      for (int k = 0; k < n; ++k) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) acc -= gamma[static_cast<std::size_t>(k)](i, j) * v[i] * F[j];
        dF[k] = acc;
      }
    }
    return true;
  };
  return sys;
}

// g-orthonormalizes the span of the given vectors at x; returns the count kept
int gram_schmidt(const Mat& g, const Vec* in, int count, Vec* out) {
  int kept = 0;
  for (int i = 0; i < count; ++i) {
    Vec w = in[i];
    for (int j = 0; j < kept; ++j) w = w + (-bilinear(g, out[j], w)) * out[j];
    const double q = bilinear(g, w, w);
    if (q <= 1e-20) continue;
    out[kept] = (1.0 / std::sqrt(q)) * w;
    ++kept;
  }
  return kept;
}

JacobianPath run_transport(const MetricField& mf, const Vec& x0, const Vec& v0, const Vec* Y0,
                           const Vec* W0, const Vec* F0, double det0_floor, const GeoConfig& cfg) {
  const int n = mf.chart.n;
  Layout lay;
  lay.n = n;
  lay.m = n - 1;
  const OdeSys sys = transport_system(mf, lay);

  State y{};
  for (int i = 0; i < n; ++i) {
    y[static_cast<std::size_t>(i)] = x0[i];
    y[static_cast<std::size_t>(n + i)] = v0[i];
  }
  for (int a = 0; a < lay.m; ++a)
    for (int i = 0; i < n; ++i) {
      y[static_cast<std::size_t>(lay.y(a) + i)] = Y0[a][i];
      y[static_cast<std::size_t>(lay.w(a) + i)] = W0[a][i];
      y[static_cast<std::size_t>(lay.f(a) + i)] = F0[a][i];
    }

  JacobianPath path;
  auto det_at = [&](const State& s) {
    Vec x;
    x.n = n;
    for (int i = 0; i < n; ++i) x[i] = s[static_cast<std::size_t>(i)];
    const Mat g = mf.g(x);
    Mat M = Mat::zero(lay.m);
    for (int a = 0; a < lay.m; ++a)
      for (int b = 0; b < lay.m; ++b) {
        Vec Y, F;
        Y.n = n;
        F.n = n;
        for (int i = 0; i < n; ++i) {
          Y[i] = s[static_cast<std::size_t>(lay.y(a) + i)];
          F[i] = s[static_cast<std::size_t>(lay.f(b) + i)];
        }
        M(a, b) = bilinear(g, Y, F);
      }
    return det(M);
  };

  const double det0 = det_at(y);
  path.area_density = det0;
  const bool normalize = std::fabs(det0) > det0_floor;

  auto push = [&](double tp, const State& s, bool at_iface) {
    GeoNode node;
    node.t = tp;
    node.x.n = n;
    node.v.n = n;
    for (int i = 0; i < n; ++i) {
      node.x[i] = s[static_cast<std::size_t>(i)];
      node.v[i] = s[static_cast<std::size_t>(n + i)];
    }
    node.at_interface = at_iface;
    node.energy = bilinear(mf.g(node.x), node.v, node.v);
    State dy{};
    State st = s;
    bool ok = sys.f(st.data(), dy.data());
    if (!ok) {
      for (int i = 0; i < n; ++i)
        st[static_cast<std::size_t>(i)] += 1e-10 * st[static_cast<std::size_t>(n + i)];
      ok = sys.f(st.data(), dy.data());
    }
    node.a.n = n;
    for (int i = 0; i < n; ++i) node.a[i] = ok ? dy[static_cast<std::size_t>(n + i)] : 0.0;
    path.base.nodes.push_back(node);
    path.t.push_back(tp);
    path.jac.push_back(normalize ? det_at(s) / det0 : det_at(s));
  };

  detail::DriveConfig dc;
  dc.h = cfg.h;
  dc.t_end = cfg.t_end;
  dc.chart_pad = cfg.chart_pad;
  dc.max_steps = cfg.max_steps;
  detail::DriveStats stats;
  const detail::DriveStop stop = detail::drive(sys, mf, y, dc, stats, push);
  path.base.stop = stop == detail::DriveStop::reached_end ? GeoStop::reached_end
                   : stop == detail::DriveStop::left_chart ? GeoStop::left_chart
                                                           : GeoStop::step_failure;
  path.base.t_exit = stats.t_exit;
  path.base.interface_crossings = stats.interface_crossings;
  path.base.step_error = stats.step_error;
  path.valid = stop != detail::DriveStop::step_failure;

  // first parameter where the determinant changes sign or vanishes; the
  // point case starts at zero, so begin past the first positive value
  std::size_t i0 = 0;
  while (i0 < path.jac.size() && path.jac[i0] <= 0.0) ++i0;
  for (std::size_t i = i0 + 1; i < path.jac.size(); ++i) {
    const double a = path.jac[i - 1], b = path.jac[i];
    if (a > 0.0 && b <= 0.0) {
      const double frac = a / (a - b);
      path.first_zero = path.t[i - 1] + frac * (path.t[i] - path.t[i - 1]);
      break;
    }
  }
  return path;
}

}  // namespace

double JacobianPath::jac_at(double tp) const {
  if (t.empty()) return 0.0;
  if (tp <= t.front()) return jac.front();
  if (tp >= t.back()) return jac.back();
  std::size_t lo = 0, hi = t.size() - 1;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    (t[mid] <= tp ? lo : hi) = mid;
  }
  const double frac = (tp - t[lo]) / (t[hi] - t[lo]);
  return jac[lo] + frac * (jac[hi] - jac[lo]);
}

JacobianPath normal_jacobian(const MetricField& mf, const Hypersurface& sig, const Vec& u,
                             const GeoConfig& cfg) {
  const int n = mf.chart.n;
  const int m = n - 1;
  JacobianPath bad;

  const Vec x0 = sig.embed_point(u);
  const NormalData nd = unit_normal(mf, sig, x0);
  if (!nd.valid) return bad;
  Vec E[kMaxDim];
  sig.tangent_basis(u, E);
  Mat dn;
  if (!normal_field_derivative(mf, sig, x0, dn)) return bad;

  Vec W0[kMaxDim];
  for (int a = 0; a < m; ++a) {
    W0[a].n = n;
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int j = 0; j < n; ++j) acc += dn(i, j) * E[a][j];
      W0[a][i] = acc;
    }
  }
  Vec F0[kMaxDim];
  if (gram_schmidt(mf.g(x0), E, m, F0) != m) return bad;

  JacobianPath path = run_transport(mf, x0, nd.n, E, W0, F0, 1e-300, cfg);
  if (path.area_density <= 0.0) path.valid = false;
  return path;
}

JacobianPath point_jacobian(const MetricField& mf, const Vec& x0, const Vec& v0,
                            const GeoConfig& cfg) {
  const int n = mf.chart.n;
  const int m = n - 1;

  // complement frame: orthonormalize the coordinate axes against v0
  Vec cand[kMaxDim + 1];
  cand[0] = v0;
  for (int i = 0; i < n; ++i) {
    Vec e;
    e.n = n;
    for (int j = 0; j < n; ++j) e[j] = i == j ? 1.0 : 0.0;
    cand[i + 1] = e;
  }
  Vec frame[kMaxDim + 1];
  const int kept = gram_schmidt(mf.g(x0), cand, n + 1, frame);
  if (kept != n) throw std::runtime_error("point_jacobian: frame construction failed");

  Vec Y0[kMaxDim], W0[kMaxDim], F0[kMaxDim];
  for (int a = 0; a < m; ++a) {
    Y0[a].n = n;
    for (int i = 0; i < n; ++i) Y0[a][i] = 0.0;
    W0[a] = frame[a + 1];
    F0[a] = frame[a + 1];
  }
  // det0 is zero here; keep the raw determinant
  return run_transport(mf, x0, v0, Y0, W0, F0, std::numeric_limits<double>::infinity(), cfg);
}

}  // namespace geomlab
