// 1-D quadrature helpers shared by the model integrals and the volume engine.
#pragma once

#include <cmath>
#include <functional>
#include <vector>

namespace geomlab {

namespace detail {
template <class F>
double adaptive_simpson_rec(const F& f, double a, double b, double fa, double fm,
                            double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
}  // namespace detail

// Adaptive Simpson to absolute tolerance tol.
template <class F>
double integrate_adaptive(const F& f, double a, double b, double tol, int max_depth = 40) {
  if (a == b) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

// Composite Simpson over equally spaced samples y[0..m] on [a,b].  m must be
// even; callers build their grids that way.
inline double simpson_samples(const std::vector<double>& y, double a, double b) {
  const std::size_t m = y.size() - 1;
  const double h = (b - a) / static_cast<double>(m);
  double s = y[0] + y[m];
  for (std::size_t i = 1; i < m; ++i) s += (i % 2 == 1 ? 4.0 : 2.0) * y[i];
  return s * h / 3.0;
}

inline double trapezoid_samples(const std::vector<double>& y, double a, double b) {
  const std::size_t m = y.size() - 1;
  const double h = (b - a) / static_cast<double>(m);
  double s = 0.5 * (y[0] + y[m]);
  for (std::size_t i = 1; i < m; ++i) s += y[i];
  return s * h;
}

}  // namespace geomlab
