// Concrete component providers: constant-diagonal metrics, expression-backed
// component matrices, and diagonal warped products over constant-curvature
// polar fibers.  All three supply closed-form jets.
#pragma once

#include <memory>
#include <vector>

#include "geomlab/expr.hpp"
#include "geomlab/metric.hpp"
#include "geomlab/models.hpp"

namespace geomlab {

class ConstDiagField : public ComponentField {
 public:
  ConstDiagField(int n, const std::vector<double>& diag);
  Mat value(const Vec& x) const override;
  bool has_closed_form() const override { return true; }
  void jet1(const Vec& x, Jet1& out) const override;
  void jet2(const Vec& x, Jet2& out) const override;

 private:
  int n_;
  std::array<double, kMaxDim> d_{};
};

// Symmetric matrix of expressions (upper triangle, row major), with
// symbolically differentiated first and second derivatives prepared eagerly
// so evaluation is safe to share across workers.
class ExprField : public ComponentField {
 public:
  ExprField(int n, std::vector<ExprPtr> upper);
  Mat value(const Vec& x) const override;
  bool has_closed_form() const override { return true; }
  void jet1(const Vec& x, Jet1& out) const override;
  void jet2(const Vec& x, Jet2& out) const override;

 private:
  int n_;
  std::vector<ExprPtr> comp_;                // n(n+1)/2
  std::vector<std::vector<ExprPtr>> d1_;     // [entry][axis]
  std::vector<std::vector<ExprPtr>> d2_;     // [entry][axis*kMaxDim+axis2]
  int tri(int i, int j) const;
};

// Diagonal warped product  base_sign * dx0^2 + w(x0)^2 h_fiber  with h_fiber
// the polar form of the unit sphere / euclidean space / unit hyperbolic
// space in dimension n-1.  Covers the comparison models (base_sign = -1),
// Robertson-Walker style fixtures, round spheres (base_sign = +1, w = sin)
// and surfaces of revolution.
class WarpedField : public ComponentField {
 public:
  WarpedField(int n, double base_sign, Warp1D warp, FiberKind fiber);
  Mat value(const Vec& x) const override;
  bool has_closed_form() const override { return true; }
  void jet1(const Vec& x, Jet1& out) const override;
  void jet2(const Vec& x, Jet2& out) const override;

  const Warp1D& warp() const { return warp_; }

 private:
  int n_;
  double s0_;
  Warp1D warp_;
  FiberKind fiber_;

  // factor layout of diag entry i>=1: warp^2(x0) times, for i>=2, the fiber
  // polar prefactor sfib^2(x1) * prod_{j=2..i-1} sin^2(x_j)
  void entry(const Vec& x, int i, double& v, double* d1, double* d2) const;
};

// Piecewise analytic warp profiles glued with matching value and slope: each
// piece is a*cos(w(t-c)), a*sin-type, exponential or affine in closed form.
// Used to build the reduced-smoothness fixtures.
struct WarpPiece {
  double t_end;  // piece valid for t < t_end (last piece: +inf)
  // f(t) = a*cos(om*(t-c)) + d  with om=0 meaning the affine form a*(t-c)+d
  double a = 1.0, om = 1.0, c = 0.0, d = 0.0;
  bool affine = false;
};

Warp1D piecewise_warp(std::vector<WarpPiece> pieces);

// C1-matched cosine continuation: starts as cos(t) on [0, t_break], continues
// with frequency om2 (amplitude and phase solved from the matching).  Returns
// the glued warp plus the continuation's zero crossing time.
Warp1D cosine_kink_warp(double t_break, double om2, double& zero_time);

// Same construction for sin(rho) profiles of surfaces of revolution: sin(rho)
// on [0, rho_break], then frequency om2, C1-matched.
Warp1D sine_kink_warp(double rho_break, double om2);

}  // namespace geomlab
