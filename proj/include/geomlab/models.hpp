// Closed-form catalog of the warped comparison spacetimes: row selection over
// (kappa, beta, n), the warping function f with its zero-extension, area and
// volume ratios, constant-curvature ball volumes, and the limit-family
// behavior of the extended warping functions.
#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace geomlab {

enum class FiberKind { sphere, flat, hyperbolic };

// 1-D warp profile with two derivatives and declared kink locations (empty
// for analytic profiles).  Shared by the model catalog and the warped-product
// metric fixtures.
struct Warp1D {
  std::function<void(double t, double& f, double& df, double& ddf)> eval;
  std::vector<double> kinks;

  double value(double t) const {
    double f, df, ddf;
    eval(t, f, df, ddf);
    return f;
  }
  double d1(double t) const {
    double f, df, ddf;
    eval(t, f, df, ddf);
    return df;
  }
};

struct ComparisonModel {
  double kappa = 0.0;   // curvature bound, 1/length^2
  double beta = 0.0;    // mean-curvature bound, 1/length
  int n = 2;            // spacetime dimension
  int row = 0;          // Table row 1..9 (documented in make_model)
  FiberKind fiber = FiberKind::flat;
  double b = 0.0;            // offset in the row's closed form
  double collapse = 0.0;     // b_{kappa,beta}; infinity() when no collapse
  Warp1D f;

  double f0() const { return f.value(0.0); }
  bool collapses() const;
};

// Row selection.  Comparisons of |beta| against (n-1)sqrt|kappa| and of kappa
// against 0 use the classification tolerance; ties go to the boundary rows.
ComparisonModel make_model(double kappa, double beta, int n, double class_tol = 1e-12);

// f extended by zero past the collapse time.
double f_tilde(const ComparisonModel& m, double t);

// (f_tilde(t)/f(0))^(n-1); 0 for t >= collapse time.
double area_ratio(const ComparisonModel& m, double t);

// Integral of the area ratio from 0 to t; constant past the collapse time.
// Closed forms for the polynomial rows, adaptive quadrature otherwise.
double ball_volume_normalized(const ComparisonModel& m, double t, double tol = 1e-9);

// sn_kappa and the constant-curvature ball volume c_n * int_0^r sn^(n-1).
double sn_kappa(double kappa, double s);
double unit_sphere_area(int n);  // area of S^(n-1)
double riemannian_model_volume(double kappa, int n, double r, double tol = 1e-9);

// Limit families of the convergence lemma.  Cases 1..4 converge raw; the
// exceptional case diverges raw but converges after f(0)-normalization.
enum class LimitCase { c1, c2, c3, c4, exceptional };

struct LimitStep {
  int k;
  double kappa, beta;
  double raw_sup;         // sup over grid of |f_tilde_k - f_tilde_limit|
  double normalized_sup;  // same for f_tilde/f(0)
};

struct LimitReport {
  LimitCase which;
  double kappa0, beta0;
  std::vector<LimitStep> steps;
  bool raw_monotone_decreasing;
  bool normalized_monotone_decreasing;
  bool verdict;  // matches the lemma for this case
};

LimitReport limit_family_check(LimitCase which, int n, const std::vector<double>& t_grid,
                               const std::vector<int>& ks = {4, 8, 16});

// Model catalog row dump for documentation tests (JSON via cli layer).
std::string row_name(int row);

}  // namespace geomlab
