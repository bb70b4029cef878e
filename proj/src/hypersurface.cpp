#include "geomlab/hypersurface.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace geomlab {

namespace {

ExprPtr make_var(int i) {
  auto node = std::make_shared<ExprNode>();
  node->kind = ExprKind::variable;
  node->var = i;
  return node;
}

ExprPtr make_binary(ExprKind k, ExprPtr a, ExprPtr b) {
  auto node = std::make_shared<ExprNode>();
  node->kind = k;
  node->a = std::move(a);
  node->b = std::move(b);
  return node;
}

}  // namespace

Vec Hypersurface::embed_point(const Vec& u) const {
  Vec x;
  x.n = ambient_dim();
  for (int i = 0; i < x.n; ++i) x[i] = embed[static_cast<std::size_t>(i)]->eval(u.a.data());
  return x;
}

void Hypersurface::tangent_basis(const Vec& u, Vec* E) const {
  const int n = ambient_dim();
  for (int a = 0; a < dim(); ++a) {
    E[a].n = n;
    for (int i = 0; i < n; ++i)
      E[a][i] = dembed[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)]->eval(u.a.data());
  }
}

Vec Hypersurface::level_gradient(const Vec& x) const {
  Vec g;
  g.n = static_cast<int>(dF.size());
  for (int i = 0; i < g.n; ++i) g[i] = dF[static_cast<std::size_t>(i)]->eval(x.a.data());
  return g;
}

Hypersurface time_slice(const MetricField& mf, double t0, const std::vector<Interval>& ubox) {
  const int n = mf.chart.n;
  if (static_cast<int>(ubox.size()) != n - 1)
    throw std::invalid_argument("time_slice: parameter box must have n-1 intervals");
  Hypersurface s;
  s.F = make_binary(ExprKind::sub, make_var(0), make_const(t0));
  s.dF.resize(static_cast<std::size_t>(n));
  s.dF[0] = make_const(1.0);
  for (int i = 1; i < n; ++i) s.dF[static_cast<std::size_t>(i)] = make_const(0.0);
  s.future_sign = 1.0;

  s.patch.n = n - 1;
  for (int a = 0; a < n - 1; ++a) {
    s.patch.coords.push_back(mf.chart.coords[static_cast<std::size_t>(a + 1)]);
    s.patch.box[static_cast<std::size_t>(a)] = ubox[static_cast<std::size_t>(a)];
    s.patch.period[static_cast<std::size_t>(a)] = mf.chart.period[static_cast<std::size_t>(a + 1)];
  }
  s.embed.resize(static_cast<std::size_t>(n));
  s.embed[0] = make_const(t0);
  for (int i = 1; i < n; ++i) s.embed[static_cast<std::size_t>(i)] = make_var(i - 1);
  s.dembed.assign(static_cast<std::size_t>(n), {});
  for (int i = 0; i < n; ++i) {
    s.dembed[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(n - 1));
    for (int a = 0; a < n - 1; ++a)
      s.dembed[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)] =
          make_const(i == a + 1 ? 1.0 : 0.0);
  }
  return s;
}

NormalData unit_normal(const MetricField& mf, const Hypersurface& sig, const Vec& x) {
  NormalData out;
  const Vec df = sig.level_gradient(x);
  if (norm(df) < sig.grad_floor) return out;
  const Mat g = mf.g(x);
  Mat ginv;
  try {
    ginv = inverse(g);
  } catch (const std::exception&) {
    return out;
  }
  Vec N = matvec(ginv, df);
  const double q = bilinear(g, N, N);
  if (std::fabs(q) < sig.grad_floor * sig.grad_floor) return out;
  N = (1.0 / std::sqrt(std::fabs(q))) * N;
  if (mf.signature == Signature::lorentzian) {
    if (!mf.future_pointing(N)) N = -1.0 * N;
  } else {
    if (sig.future_sign * dot(df, N) < 0.0) N = -1.0 * N;
  }
  out.n = N;
  out.valid = true;
  return out;
}

bool normal_field_derivative(const MetricField& mf, const Hypersurface& sig, const Vec& x,
                             Mat& dn) {
  const int n = mf.chart.n;
  dn = Mat::zero(n);
  auto normal_at = [&](const Vec& y, Vec& out) {
    const NormalData d = unit_normal(mf, sig, y);
    if (d.valid) out = d.n;
    return d.valid;
  };

  for (int j = 0; j < n; ++j) {
    const double h = mf.fd_step(j);
    bool fwd_ok = true, bwd_ok = true;
    for (const InterfaceLocus& L : mf.loci)
      if (L.axis == j) {
        if (x[j] <= L.value && x[j] + 2.0 * h > L.value) fwd_ok = false;
        if (x[j] >= L.value && x[j] - 2.0 * h < L.value) bwd_ok = false;
      }
    const Interval& iv = mf.chart.box[static_cast<std::size_t>(j)];
    if (x[j] + 2.0 * h > iv.hi) fwd_ok = false;
    if (x[j] - 2.0 * h < iv.lo) bwd_ok = false;

    Vec stencil[3];
    double w[3];
    int cnt = 0;
    double sgn = 1.0;
    if (fwd_ok && bwd_ok) {
      Vec xp = x, xm = x;
      xp[j] += h;
      xm[j] -= h;
      if (!normal_at(xp, stencil[0]) || !normal_at(xm, stencil[1])) return false;
      w[0] = 0.5;
      w[1] = -0.5;
      cnt = 2;
    } else if (fwd_ok || bwd_ok) {
      sgn = fwd_ok ? 1.0 : -1.0;
      Vec x0 = x, x1 = x, x2 = x;
      x1[j] += sgn * h;
      x2[j] += sgn * 2.0 * h;
      if (!normal_at(x0, stencil[0]) || !normal_at(x1, stencil[1]) || !normal_at(x2, stencil[2]))
        return false;
      w[0] = -1.5 * sgn;
      w[1] = 2.0 * sgn;
      w[2] = -0.5 * sgn;
      cnt = 3;
    } else {
      return false;
    }
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int s = 0; s < cnt; ++s) acc += w[s] * stencil[s][i];
      dn(i, j) = acc / h;
    }
  }
  return true;
}

double mean_curvature(const MetricField& mf, const Hypersurface& sig, const Vec& x) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const int n = mf.chart.n;
  const NormalData nd = unit_normal(mf, sig, x);
  if (!nd.valid) return nan;
  const ChristoffelValue ch = christoffel_at(mf, x);
  if (!ch.valid) return nan;
  Mat dn;
  if (!normal_field_derivative(mf, sig, x, dn)) return nan;

  Mat A = Mat::zero(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double acc = dn(i, j);
      for (int k = 0; k < n; ++k) acc += ch.gamma[static_cast<std::size_t>(i)](j, k) * nd.n[k];
      A(i, j) = acc;
    }

  const Mat g = mf.g(x);
  const double eps = bilinear(g, nd.n, nd.n) < 0.0 ? -1.0 : 1.0;
  Vec nflat = matvec(g, nd.n);
  double H = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double P = (i == j ? 1.0 : 0.0) - eps * nd.n[i] * nflat[j];
      H += P * A(j, i);
    }
  return H;
}

MeanCurvatureReport mean_curvature_scan(const MetricField& mf, const Hypersurface& sig,
                                        int per_axis, Exec exec) {
  const int m = sig.dim();
  std::int64_t total = 1;
  for (int a = 0; a < m; ++a) total *= per_axis;

  std::vector<double> vals(static_cast<std::size_t>(total));
  std::vector<Vec> us(static_cast<std::size_t>(total));
  par_for(exec, total, [&](std::int64_t idx) {
    Vec u;
    u.n = m;
    std::int64_t rem = idx;
    for (int a = 0; a < m; ++a) {
      const int cell = static_cast<int>(rem % per_axis);
      rem /= per_axis;
      const Interval& iv = sig.patch.box[static_cast<std::size_t>(a)];
      u[a] = iv.lo + (cell + 0.5) * (iv.hi - iv.lo) / per_axis;
    }
    us[static_cast<std::size_t>(idx)] = u;
    vals[static_cast<std::size_t>(idx)] = mean_curvature(mf, sig, sig.embed_point(u));
  });

  MeanCurvatureReport rep;
  rep.max_h = -std::numeric_limits<double>::infinity();
  for (std::int64_t i = 0; i < total; ++i) {
    const double h = vals[static_cast<std::size_t>(i)];
    if (std::isnan(h)) {
      ++rep.skipped;
      continue;
    }
    ++rep.evaluated;
    if (h > rep.max_h) {
      rep.max_h = h;
      rep.arg_u = us[static_cast<std::size_t>(i)];
    }
  }
  return rep;
}

}  // namespace geomlab
