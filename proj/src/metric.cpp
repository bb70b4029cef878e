#include "geomlab/metric.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

namespace geomlab {

void ComponentField::jet1(const Vec&, Jet1&) const {
  throw std::runtime_error("component field has no closed-form derivatives");
}
void ComponentField::jet2(const Vec&, Jet2&) const {
  throw std::runtime_error("component field has no closed-form derivatives");
}

namespace {

enum class Stencil { central, backward, forward, invalid };

// Per-axis stencil choice.  reach_side is how many steps h the one-sided
// stencils extend; central always uses one step each way.  A point closer
// than h to an interface locus cannot keep any stencil on one side of it, so
// it is flagged invalid (curvature is not defined on the locus anyway).
Stencil pick_stencil(const MetricField& mf, const Vec& x, int axis, int reach_side) {
  const double h = mf.fd_step(axis);
  const Interval& iv = mf.chart.box[static_cast<std::size_t>(axis)];
  double up = iv.hi - x[axis];    // room above
  double dn = x[axis] - iv.lo;    // room below
  bool locus_near = false;
  for (const InterfaceLocus& L : mf.loci) {
    if (L.axis != axis) continue;
    const double d = L.value - x[axis];
    if (std::abs(d) < h) locus_near = true;
    else if (d > 0.0) up = std::min(up, d);
    else dn = std::min(dn, -d);
  }
  if (locus_near) return Stencil::invalid;
  if (up >= h && dn >= h && up + dn >= 2.0 * h) {
    // central is fine unless a one-sided second-derivative stencil is needed
    // anyway; central second derivatives also reach just one step each way
    if (up >= h && dn >= h) return Stencil::central;
  }
  const double reach = reach_side * h;
  if (dn >= reach) return Stencil::backward;
  if (up >= reach) return Stencil::forward;
  return Stencil::invalid;
}

struct Fd1 {
  int count;
  int off[3];
  double w[3];
};

Fd1 fd1_weights(Stencil s) {
  switch (s) {
    case Stencil::central: return {2, {1, -1, 0}, {0.5, -0.5, 0.0}};
    case Stencil::backward: return {3, {0, -1, -2}, {1.5, -2.0, 0.5}};
    default: return {3, {0, 1, 2}, {-1.5, 2.0, -0.5}};
  }
}

struct Fd2 {
  int count;
  int off[4];
  double w[4];
};

Fd2 fd2_weights(Stencil s) {
  switch (s) {
    case Stencil::central: return {3, {1, 0, -1, 0}, {1.0, -2.0, 1.0, 0.0}};
    case Stencil::backward: return {4, {0, -1, -2, -3}, {2.0, -5.0, 4.0, -1.0}};
    default: return {4, {0, 1, 2, 3}, {2.0, -5.0, 4.0, -1.0}};
  }
}

Mat shifted_value(const MetricField& mf, Vec x, int axis, int off, double h) {
  x[axis] += off * h;
  return mf.comp->value(x);
}

void accumulate(Mat& acc, const Mat& m, double w) {
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) acc(i, j) += w * m(i, j);
}

bool on_locus(const MetricField& mf, const Vec& x) {
  for (const InterfaceLocus& L : mf.loci) {
    const double tol = 1e-12 * std::max(1.0, mf.chart.box[static_cast<std::size_t>(L.axis)].extent());
    if (std::abs(x[L.axis] - L.value) < tol) return true;
  }
  return false;
}

}  // namespace

bool MetricField::jet1_at(const Vec& x, Jet1& out) const {
  const int n = chart.n;
  if (deriv_mode == DerivMode::closed_form && comp->has_closed_form()) {
    comp->jet1(x, out);
    return !on_locus(*this, x);
  }
  out.g = comp->value(x);
  bool valid = true;
  for (int k = 0; k < n; ++k) {
    Stencil s = pick_stencil(*this, x, k, 2);
    if (s == Stencil::invalid) {
      valid = false;
      s = x[k] - chart.box[static_cast<std::size_t>(k)].lo >
                  chart.box[static_cast<std::size_t>(k)].hi - x[k]
              ? Stencil::backward
              : Stencil::forward;
    }
    const double h = fd_step(k);
    const Fd1 f = fd1_weights(s);
    Mat d = Mat::zero(n);
    for (int q = 0; q < f.count; ++q) {
      if (f.off[q] == 0) accumulate(d, out.g, f.w[q]);
      else accumulate(d, shifted_value(*this, x, k, f.off[q], h), f.w[q]);
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d(i, j) /= h;
    out.dg[static_cast<std::size_t>(k)] = d;
  }
  return valid;
}

bool MetricField::jet2_at(const Vec& x, Jet2& out) const {
  const int n = chart.n;
  if (deriv_mode == DerivMode::closed_form && comp->has_closed_form()) {
    comp->jet2(x, out);
    return !on_locus(*this, x);
  }
  Jet1 j1;
  bool valid = jet1_at(x, j1);
  out.g = j1.g;
  out.dg = j1.dg;

  std::array<Stencil, kMaxDim> st;
  for (int k = 0; k < n; ++k) {
    st[static_cast<std::size_t>(k)] = pick_stencil(*this, x, k, 3);
    if (st[static_cast<std::size_t>(k)] == Stencil::invalid) {
      valid = false;
      st[static_cast<std::size_t>(k)] =
          x[k] - chart.box[static_cast<std::size_t>(k)].lo >
                  chart.box[static_cast<std::size_t>(k)].hi - x[k]
              ? Stencil::backward
              : Stencil::forward;
    }
  }
  for (int k = 0; k < n; ++k) {
    const double hk = fd_step(k);
    // pure second derivative along k
    {
      const Fd2 f = fd2_weights(st[static_cast<std::size_t>(k)]);
      Mat d = Mat::zero(n);
      for (int q = 0; q < f.count; ++q) {
        if (f.off[q] == 0) accumulate(d, out.g, f.w[q]);
        else accumulate(d, shifted_value(*this, x, k, f.off[q], hk), f.w[q]);
      }
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) d(i, j) /= hk * hk;
      out.d2g[static_cast<std::size_t>(k * kMaxDim + k)] = d;
    }
    // mixed derivatives as a tensor product of first-derivative stencils
    for (int l = k + 1; l < n; ++l) {
      const double hl = fd_step(l);
      const Fd1 fk = fd1_weights(st[static_cast<std::size_t>(k)]);
      const Fd1 fl = fd1_weights(st[static_cast<std::size_t>(l)]);
      Mat d = Mat::zero(n);
      for (int qk = 0; qk < fk.count; ++qk)
        for (int ql = 0; ql < fl.count; ++ql) {
          Vec xs = x;
          xs[k] += fk.off[qk] * hk;
          xs[l] += fl.off[ql] * hl;
          accumulate(d, comp->value(xs), fk.w[qk] * fl.w[ql]);
        }
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) d(i, j) /= hk * hl;
      out.d2g[static_cast<std::size_t>(k * kMaxDim + l)] = d;
      out.d2g[static_cast<std::size_t>(l * kMaxDim + k)] = d;
    }
  }
  return valid;
}

bool signature_matches(const Mat& g, Signature sig) {
  Vec eig;
  Mat vecs;
  sym_eigen(g, eig, vecs);
  int neg = 0, pos = 0;
  for (int i = 0; i < g.n; ++i) {
    if (eig[i] < -1e-12) ++neg;
    else if (eig[i] > 1e-12) ++pos;
    else return false;  // degenerate
  }
  if (sig == Signature::riemannian) return neg == 0 && pos == g.n;
  return neg == 1 && pos == g.n - 1;
}

MetricValue metric_eval(const MetricField& mf, const Vec& x, double det_tol) {
  if (!mf.chart.contains(x))
    throw std::runtime_error("metric_eval: point outside chart");
  MetricValue mv;
  mv.g = mf.comp->value(x);
  if (std::abs(det(mv.g)) < det_tol)
    throw std::runtime_error("metric_eval: metric degenerate at point");
  mv.signature_ok = signature_matches(mv.g, mf.signature);
  return mv;
}

void christoffel_from_jet(const Jet1& jet, int n, std::array<Mat, kMaxDim>& gamma) {
  const Mat ginv = inverse(jet.g);
  for (int k = 0; k < n; ++k) {
    Mat G = Mat::zero(n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double s = 0.0;
        for (int l = 0; l < n; ++l) {
          const double term = jet.dg[static_cast<std::size_t>(i)](j, l) +
                              jet.dg[static_cast<std::size_t>(j)](i, l) -
                              jet.dg[static_cast<std::size_t>(l)](i, j);
          s += ginv(k, l) * term;
        }
        G(i, j) = 0.5 * s;
        G(j, i) = G(i, j);
      }
    gamma[static_cast<std::size_t>(k)] = G;
  }
}

ChristoffelValue christoffel_at(const MetricField& mf, const Vec& x) {
  Jet1 jet;
  ChristoffelValue cv;
  cv.valid = mf.jet1_at(x, jet);
  christoffel_from_jet(jet, mf.chart.n, cv.gamma);
  return cv;
}

void dchristoffel_from_jet(const Jet2& jet, int n,
                           std::array<std::array<Mat, kMaxDim>, kMaxDim>& out) {
  const Mat ginv = inverse(jet.g);

  // d_m g^{kl} = -g^{ka} (d_m g_ab) g^{bl}
  std::array<Mat, kMaxDim> dginv;
  for (int m = 0; m < n; ++m) {
    Mat d = Mat::zero(n);
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) {
        double s = 0.0;
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b)
            s -= ginv(k, a) * jet.dg[static_cast<std::size_t>(m)](a, b) * ginv(b, l);
        d(k, l) = s;
      }
    dginv[static_cast<std::size_t>(m)] = d;
  }

  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k) {
      Mat d = Mat::zero(n);
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          double s = 0.0;
          for (int l = 0; l < n; ++l) {
            const double term = jet.dg[static_cast<std::size_t>(i)](j, l) +
                                jet.dg[static_cast<std::size_t>(j)](i, l) -
                                jet.dg[static_cast<std::size_t>(l)](i, j);
            const double dterm = jet.d2g[static_cast<std::size_t>(m * kMaxDim + i)](j, l) +
                                 jet.d2g[static_cast<std::size_t>(m * kMaxDim + j)](i, l) -
                                 jet.d2g[static_cast<std::size_t>(m * kMaxDim + l)](i, j);
            s += dginv[static_cast<std::size_t>(m)](k, l) * term + ginv(k, l) * dterm;
          }
          d(i, j) = 0.5 * s;
          d(j, i) = 0.5 * s;
        }
      out[static_cast<std::size_t>(m)][static_cast<std::size_t>(k)] = d;
    }
}

CurvatureSample ricci_at(const MetricField& mf, const Vec& x) {
  const int n = mf.chart.n;
  Jet2 jet;
  CurvatureSample cs;
  cs.valid = mf.jet2_at(x, jet);

  std::array<Mat, kMaxDim> gamma;
  {
    Jet1 j1;
    j1.g = jet.g;
    j1.dg = jet.dg;
    christoffel_from_jet(j1, n, gamma);
  }
  auto dgam = std::make_unique<std::array<std::array<Mat, kMaxDim>, kMaxDim>>();
  dchristoffel_from_jet(jet, n, *dgam);
  auto dgamma = [&](int m, int k, int i, int j) {
    return (*dgam)[static_cast<std::size_t>(m)][static_cast<std::size_t>(k)](i, j);
  };

  Mat ric = Mat::zero(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) {
        s += dgamma(k, k, i, j) - dgamma(j, k, i, k);
        for (int l = 0; l < n; ++l)
          s += gamma[static_cast<std::size_t>(k)](k, l) * gamma[static_cast<std::size_t>(l)](i, j) -
               gamma[static_cast<std::size_t>(k)](j, l) * gamma[static_cast<std::size_t>(l)](i, k);
      }
      ric(i, j) = s;
      ric(j, i) = s;
    }
  cs.ricci = ric;
  return cs;
}

}  // namespace geomlab
