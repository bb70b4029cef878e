#include "geomlab/fields.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace geomlab {

//------------------------------------------------------------------------
// constant diagonal

ConstDiagField::ConstDiagField(int n, const std::vector<double>& diag) : n_(n) {
  if (static_cast<int>(diag.size()) != n)
    throw std::invalid_argument("ConstDiagField: diagonal size mismatch");
  for (int i = 0; i < n; ++i) d_[static_cast<std::size_t>(i)] = diag[static_cast<std::size_t>(i)];
}

Mat ConstDiagField::value(const Vec&) const {
  Mat g = Mat::zero(n_);
  for (int i = 0; i < n_; ++i) g(i, i) = d_[static_cast<std::size_t>(i)];
  return g;
}

void ConstDiagField::jet1(const Vec& x, Jet1& out) const {
  out.g = value(x);
  for (int k = 0; k < n_; ++k) out.dg[static_cast<std::size_t>(k)] = Mat::zero(n_);
}

void ConstDiagField::jet2(const Vec& x, Jet2& out) const {
  out.g = value(x);
  for (int k = 0; k < n_; ++k) out.dg[static_cast<std::size_t>(k)] = Mat::zero(n_);
  for (int k = 0; k < n_; ++k)
    for (int l = 0; l < n_; ++l)
      out.d2g[static_cast<std::size_t>(k * kMaxDim + l)] = Mat::zero(n_);
}

//------------------------------------------------------------------------
// expression components

int ExprField::tri(int i, int j) const {
  if (i > j) std::swap(i, j);
  return i * n_ - i * (i - 1) / 2 + (j - i);
}

ExprField::ExprField(int n, std::vector<ExprPtr> upper) : n_(n), comp_(std::move(upper)) {
  const int m = n * (n + 1) / 2;
  if (static_cast<int>(comp_.size()) != m)
    throw std::invalid_argument("ExprField: expected n(n+1)/2 components");
  d1_.resize(comp_.size());
  d2_.resize(comp_.size());
  for (int e = 0; e < m; ++e) {
    d1_[static_cast<std::size_t>(e)].resize(static_cast<std::size_t>(n));
    d2_[static_cast<std::size_t>(e)].resize(static_cast<std::size_t>(kMaxDim * kMaxDim));
    for (int a = 0; a < n; ++a)
      d1_[static_cast<std::size_t>(e)][static_cast<std::size_t>(a)] =
          diff_expr(comp_[static_cast<std::size_t>(e)], a);
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b) {
        ExprPtr d = diff_expr(d1_[static_cast<std::size_t>(e)][static_cast<std::size_t>(a)], b);
        d2_[static_cast<std::size_t>(e)][static_cast<std::size_t>(a * kMaxDim + b)] = d;
        d2_[static_cast<std::size_t>(e)][static_cast<std::size_t>(b * kMaxDim + a)] = d;
      }
  }
}

Mat ExprField::value(const Vec& x) const {
  Mat g = Mat::zero(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = i; j < n_; ++j) {
      const double v = comp_[static_cast<std::size_t>(tri(i, j))]->eval(x.a.data());
      g(i, j) = v;
      g(j, i) = v;
    }
  return g;
}

void ExprField::jet1(const Vec& x, Jet1& out) const {
  out.g = value(x);
  for (int k = 0; k < n_; ++k) {
    Mat d = Mat::zero(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = i; j < n_; ++j) {
        const double v = d1_[static_cast<std::size_t>(tri(i, j))][static_cast<std::size_t>(k)]
                             ->eval(x.a.data());
        d(i, j) = v;
        d(j, i) = v;
      }
    out.dg[static_cast<std::size_t>(k)] = d;
  }
}

void ExprField::jet2(const Vec& x, Jet2& out) const {
  Jet1 j1;
  jet1(x, j1);
  out.g = j1.g;
  out.dg = j1.dg;
  for (int k = 0; k < n_; ++k)
    for (int l = k; l < n_; ++l) {
      Mat d = Mat::zero(n_);
      for (int i = 0; i < n_; ++i)
        for (int j = i; j < n_; ++j) {
          const double v =
              d2_[static_cast<std::size_t>(tri(i, j))][static_cast<std::size_t>(k * kMaxDim + l)]
                  ->eval(x.a.data());
          d(i, j) = v;
          d(j, i) = v;
        }
      out.d2g[static_cast<std::size_t>(k * kMaxDim + l)] = d;
      out.d2g[static_cast<std::size_t>(l * kMaxDim + k)] = d;
    }
}

//------------------------------------------------------------------------
// warped products over polar fibers

namespace {

// squared factors with two derivatives
void warpsq(const Warp1D& w, double t, double& v, double& d1, double& d2) {
  double f, df, ddf;
  w.eval(t, f, df, ddf);
  v = f * f;
  d1 = 2.0 * f * df;
  d2 = 2.0 * df * df + 2.0 * f * ddf;
}

void sinsq(double u, double& v, double& d1, double& d2) {
  const double s = std::sin(u);
  v = s * s;
  d1 = std::sin(2.0 * u);
  d2 = 2.0 * std::cos(2.0 * u);
}

void sinhsq(double u, double& v, double& d1, double& d2) {
  const double s = std::sinh(u);
  v = s * s;
  d1 = std::sinh(2.0 * u);
  d2 = 2.0 * std::cosh(2.0 * u);
}

}  // namespace

WarpedField::WarpedField(int n, double base_sign, Warp1D warp, FiberKind fiber)
    : n_(n), s0_(base_sign), warp_(std::move(warp)), fiber_(fiber) {
  if (n < 2) throw std::invalid_argument("WarpedField: n < 2");
}

// Value, gradient and hessian of diag entry i as a product of single-axis
// factors.  d1 and d2 may be null when only the value is needed.
void WarpedField::entry(const Vec& x, int i, double& v, double* d1, double* d2) const {
  struct Factor {
    int axis;
    double v, g, h;
  };
  Factor fac[kMaxDim];
  int nf = 0;

  {
    Factor f;
    f.axis = 0;
    warpsq(warp_, x[0], f.v, f.g, f.h);
    fac[nf++] = f;
  }
  if (fiber_ != FiberKind::flat && i >= 2) {
    Factor f;
    f.axis = 1;
    if (fiber_ == FiberKind::sphere) sinsq(x[1], f.v, f.g, f.h);
    else sinhsq(x[1], f.v, f.g, f.h);
    fac[nf++] = f;
    for (int j = 2; j < i; ++j) {
      Factor fj;
      fj.axis = j;
      sinsq(x[j], fj.v, fj.g, fj.h);
      fac[nf++] = fj;
    }
  }

  double prod = 1.0;
  for (int k = 0; k < nf; ++k) prod *= fac[k].v;
  v = prod;
  if (!d1) return;
  for (int a = 0; a < n_; ++a) d1[a] = 0.0;
  if (d2)
    for (int a = 0; a < n_ * n_; ++a) d2[a] = 0.0;
  for (int k = 0; k < nf; ++k) {
    double rest = 1.0;
    for (int l = 0; l < nf; ++l)
      if (l != k) rest *= fac[l].v;
    d1[fac[k].axis] = fac[k].g * rest;
    if (d2) {
      d2[fac[k].axis * n_ + fac[k].axis] = fac[k].h * rest;
      for (int l = k + 1; l < nf; ++l) {
        double rest2 = 1.0;
        for (int q = 0; q < nf; ++q)
          if (q != k && q != l) rest2 *= fac[q].v;
        const double mixed = fac[k].g * fac[l].g * rest2;
        d2[fac[k].axis * n_ + fac[l].axis] = mixed;
        d2[fac[l].axis * n_ + fac[k].axis] = mixed;
      }
    }
  }
}

Mat WarpedField::value(const Vec& x) const {
  Mat g = Mat::zero(n_);
  g(0, 0) = s0_;
  for (int i = 1; i < n_; ++i) {
    double v;
    entry(x, i, v, nullptr, nullptr);
    g(i, i) = v;
  }
  return g;
}

void WarpedField::jet1(const Vec& x, Jet1& out) const {
  out.g = Mat::zero(n_);
  out.g(0, 0) = s0_;
  for (int k = 0; k < n_; ++k) out.dg[static_cast<std::size_t>(k)] = Mat::zero(n_);
  double d1[kMaxDim];
  for (int i = 1; i < n_; ++i) {
    double v;
    entry(x, i, v, d1, nullptr);
    out.g(i, i) = v;
    for (int k = 0; k < n_; ++k) out.dg[static_cast<std::size_t>(k)](i, i) = d1[k];
  }
}

void WarpedField::jet2(const Vec& x, Jet2& out) const {
  out.g = Mat::zero(n_);
  out.g(0, 0) = s0_;
  for (int k = 0; k < n_; ++k) out.dg[static_cast<std::size_t>(k)] = Mat::zero(n_);
  for (int k = 0; k < n_; ++k)
    for (int l = 0; l < n_; ++l)
      out.d2g[static_cast<std::size_t>(k * kMaxDim + l)] = Mat::zero(n_);
  double d1[kMaxDim];
  double d2[kMaxDim * kMaxDim];
  for (int i = 1; i < n_; ++i) {
    double v;
    entry(x, i, v, d1, d2);
    out.g(i, i) = v;
    for (int k = 0; k < n_; ++k) out.dg[static_cast<std::size_t>(k)](i, i) = d1[k];
    for (int k = 0; k < n_; ++k)
      for (int l = 0; l < n_; ++l)
        out.d2g[static_cast<std::size_t>(k * kMaxDim + l)](i, i) = d2[k * n_ + l];
  }
}

//------------------------------------------------------------------------
// piecewise warp profiles

Warp1D piecewise_warp(std::vector<WarpPiece> pieces) {
  if (pieces.empty()) throw std::invalid_argument("piecewise_warp: no pieces");
  Warp1D w;
  for (std::size_t i = 0; i + 1 < pieces.size(); ++i) w.kinks.push_back(pieces[i].t_end);
  w.eval = [pieces](double t, double& f, double& df, double& ddf) {
    const WarpPiece* p = &pieces.back();
    for (const WarpPiece& q : pieces)
      if (t < q.t_end) {
        p = &q;
        break;
      }
    if (p->affine) {
      f = p->a * (t - p->c) + p->d;
      df = p->a;
      ddf = 0.0;
    } else {
      const double u = p->om * (t - p->c);
      f = p->a * std::cos(u) + p->d;
      df = -p->a * p->om * std::sin(u);
      ddf = -p->a * p->om * p->om * std::cos(u);
    }
  };
  return w;
}

Warp1D cosine_kink_warp(double t_break, double om2, double& zero_time) {
  // cos(t) on [0, t_break], then a2*cos(om2*(t-c2)) matched in value and slope
  const double u = std::atan(std::tan(t_break) / om2);
  const double a2 = std::cos(t_break) / std::cos(u);
  const double c2 = t_break - u / om2;
  zero_time = c2 + (M_PI / 2.0) / om2;
  WarpPiece p1;
  p1.t_end = t_break;
  p1.a = 1.0;
  p1.om = 1.0;
  p1.c = 0.0;
  WarpPiece p2;
  p2.t_end = std::numeric_limits<double>::infinity();
  p2.a = a2;
  p2.om = om2;
  p2.c = c2;
  return piecewise_warp({p1, p2});
}

Warp1D sine_kink_warp(double rho_break, double om2) {
  // sin(rho) = cos(rho - pi/2) on [0, rho_break], then matched continuation
  const double u = std::atan(-1.0 / (std::tan(rho_break) * om2));
  const double a2 = std::sin(rho_break) / std::cos(u);
  const double c2 = rho_break - u / om2;
  WarpPiece p1;
  p1.t_end = rho_break;
  p1.a = 1.0;
  p1.om = 1.0;
  p1.c = M_PI / 2.0;
  WarpPiece p2;
  p2.t_end = std::numeric_limits<double>::infinity();
  p2.a = a2;
  p2.om = om2;
  p2.c = c2;
  return piecewise_warp({p1, p2});
}

}  // namespace geomlab
