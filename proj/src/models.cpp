#include "geomlab/models.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "geomlab/quadrature.hpp"

namespace geomlab {

namespace {

const double kInf = std::numeric_limits<double>::infinity();

// Odd arccot branch: values in (-pi/2,0)u(0,pi/2), sign of the argument.
double arccot_odd(double x) { return std::atan(1.0 / x); }

// arccoth on |x|>1, sign of x.
double arccoth(double x) { return std::atanh(1.0 / x); }

Warp1D analytic_warp(std::function<void(double, double&, double&, double&)> f) {
  Warp1D w;
  w.eval = std::move(f);
  return w;
}

}  // namespace

bool ComparisonModel::collapses() const { return std::isfinite(collapse); }

// Row layout used throughout (kappa sign, then the beta regime):
//   1: kappa<0, |beta| < (n-1)sqrt|kappa|   sphere fiber, cosh profile
//   2: kappa<0, |beta| = (n-1)sqrt|kappa|   flat fiber, exponential profile
//   3: kappa<0, beta/(n-1)sqrt|kappa| > 1   hyperbolic fiber, sinh, b>0
//   4: kappa<0, beta/(n-1)sqrt|kappa| < -1  hyperbolic fiber, sinh, b<0, collapses
//   5: kappa=0, beta=0                      flat fiber, f=1
//   6: kappa=0, beta>0                      hyperbolic fiber, f=t+b, b>0
//   7: kappa=0, beta<0                      hyperbolic fiber, f=t+b, b<0, collapses
//   8: kappa>0, beta!=0                     hyperbolic fiber, shifted sine
//   9: kappa>0, beta=0                      hyperbolic fiber, cosine, collapses
// Rows 4, 7 and the beta<0 half of row 8 have f(0)<0; downstream formulas use
// only ratios or absolute values, so the sign is kept as printed.
ComparisonModel make_model(double kappa, double beta, int n, double class_tol) {
  if (n < 2) throw std::invalid_argument("make_model: n must be >= 2");
  ComparisonModel m;
  m.kappa = kappa;
  m.beta = beta;
  m.n = n;
  m.collapse = kInf;

  const double nm1 = n - 1;
  if (std::abs(kappa) <= class_tol) {
    if (std::abs(beta) <= class_tol) {
      m.row = 5;
      m.fiber = FiberKind::flat;
      m.b = 0.0;
      m.f = analytic_warp([](double, double& f, double& df, double& ddf) {
        f = 1.0;
        df = 0.0;
        ddf = 0.0;
      });
    } else {
      const double b = nm1 / beta;
      m.row = beta > 0 ? 6 : 7;
      m.fiber = FiberKind::hyperbolic;
      m.b = b;
      if (beta < 0) m.collapse = -b;
      m.f = analytic_warp([b](double t, double& f, double& df, double& ddf) {
        f = t + b;
        df = 1.0;
        ddf = 0.0;
      });
    }
    return m;
  }

  const double s = std::sqrt(std::abs(kappa));
  const double edge = nm1 * s;

  if (kappa > 0.0) {
    if (std::abs(beta) <= class_tol) {
      m.row = 9;
      m.fiber = FiberKind::hyperbolic;
      m.b = M_PI / 2.0;
      m.collapse = M_PI / (2.0 * s);
      m.f = analytic_warp([s](double t, double& f, double& df, double& ddf) {
        f = std::cos(s * t) / s;
        df = -std::sin(s * t);
        ddf = -s * std::cos(s * t);
      });
    } else {
      const double b = arccot_odd(beta / edge);
      m.row = 8;
      m.fiber = FiberKind::hyperbolic;
      m.b = b;
      m.collapse = (-b + (M_PI / 2.0) * (1.0 + (beta > 0 ? 1.0 : -1.0))) / s;
      m.f = analytic_warp([s, b](double t, double& f, double& df, double& ddf) {
        f = std::sin(s * t + b) / s;
        df = std::cos(s * t + b);
        ddf = -s * std::sin(s * t + b);
      });
    }
    return m;
  }

  // kappa < 0
  if (std::abs(std::abs(beta) - edge) <= class_tol) {
    const double sg = beta >= 0 ? 1.0 : -1.0;
    m.row = 2;
    m.fiber = FiberKind::flat;
    m.b = 0.0;
    m.f = analytic_warp([s, sg](double t, double& f, double& df, double& ddf) {
      f = std::exp(sg * s * t);
      df = sg * s * f;
      ddf = s * s * f;
    });
  } else if (std::abs(beta) < edge) {
    const double b = std::atanh(beta / edge);
    m.row = 1;
    m.fiber = FiberKind::sphere;
    m.b = b;
    m.f = analytic_warp([s, b](double t, double& f, double& df, double& ddf) {
      f = std::cosh(s * t + b) / s;
      df = std::sinh(s * t + b);
      ddf = s * std::cosh(s * t + b);
    });
  } else {
    const double b = arccoth(beta / edge);
    m.row = beta > 0 ? 3 : 4;
    m.fiber = FiberKind::hyperbolic;
    m.b = b;
    if (beta < 0) m.collapse = -b / s;
    m.f = analytic_warp([s, b](double t, double& f, double& df, double& ddf) {
      f = std::sinh(s * t + b) / s;
      df = std::cosh(s * t + b);
      ddf = s * std::sinh(s * t + b);
    });
  }
  return m;
}

double f_tilde(const ComparisonModel& m, double t) {
  if (t < 0.0) throw std::invalid_argument("f_tilde: t must be >= 0");
  if (t >= m.collapse) return 0.0;
  return m.f.value(t);
}

double area_ratio(const ComparisonModel& m, double t) {
  const double q = f_tilde(m, t) / m.f0();
  return std::pow(q, m.n - 1);
}

double ball_volume_normalized(const ComparisonModel& m, double t, double tol) {
  if (t <= 0.0) return 0.0;
  const double upper = std::min(t, m.collapse);
  // polynomial rows integrate in closed form
  if (m.row == 5) return upper;
  if (m.row == 6 || m.row == 7) {
    // integrand ((tau+b)/b)^(n-1)
    const double b = m.b;
    const double nn = m.n;
    return b / nn * (std::pow((upper + b) / b, nn) - 1.0);
  }
  return integrate_adaptive([&](double tau) { return area_ratio(m, tau); }, 0.0, upper, tol);
}

double sn_kappa(double kappa, double s) {
  if (kappa > 0.0) {
    const double r = std::sqrt(kappa);
    return std::sin(r * s) / r;
  }
  if (kappa < 0.0) {
    const double r = std::sqrt(-kappa);
    return std::sinh(r * s) / r;
  }
  return s;
}

double unit_sphere_area(int n) {
  // area of S^(n-1): 2 pi^(n/2) / Gamma(n/2)
  return 2.0 * std::pow(M_PI, n / 2.0) / std::tgamma(n / 2.0);
}

double riemannian_model_volume(double kappa, int n, double r, double tol) {
  if (r <= 0.0) return 0.0;
  double upper = r;
  if (kappa > 0.0) upper = std::min(upper, M_PI / std::sqrt(kappa));
  const double cn = unit_sphere_area(n);
  return cn * integrate_adaptive(
                  [&](double s) { return std::pow(sn_kappa(kappa, s), n - 1); }, 0.0,
                  upper, tol / cn);
}

namespace {

void limit_sequence(LimitCase which, int n, int k, double& kappa, double& beta,
                    double& kappa0, double& beta0) {
  const double nm1 = n - 1;
  switch (which) {
    case LimitCase::c1:
      // kappa rises to 0 with beta fixed negative
      kappa0 = 0.0;
      beta0 = -1.0;
      kappa = -1.0 / k;
      beta = beta0;
      break;
    case LimitCase::c2:
      // both shrink to the flat static row along the boundary coupling
      kappa0 = 0.0;
      beta0 = 0.0;
      kappa = -1.0 / k;
      beta = nm1 / std::sqrt(static_cast<double>(k));
      break;
    case LimitCase::c3:
      // positive curvature fixed, beta falls to 0
      kappa0 = 1.0;
      beta0 = 0.0;
      kappa = kappa0;
      beta = 1.0 / k;
      break;
    case LimitCase::c4:
      // beta fixed positive, kappa rises to 0: sinh rows flatten into the
      // expanding linear row
      kappa0 = 0.0;
      beta0 = nm1;
      kappa = -1.0 / k;
      beta = beta0;
      break;
    case LimitCase::exceptional:
      // lower boundary row: raw profiles blow up, normalized ones settle
      kappa0 = -1.0;
      beta0 = -nm1;
      kappa = kappa0 * (1.0 + 1.0 / k);
      beta = beta0 + 1.0 / k;
      break;
  }
}

}  // namespace

LimitReport limit_family_check(LimitCase which, int n, const std::vector<double>& t_grid,
                               const std::vector<int>& ks) {
  LimitReport rep;
  rep.which = which;
  double kdum, bdum;
  limit_sequence(which, n, ks.empty() ? 4 : ks.front(), kdum, bdum, rep.kappa0, rep.beta0);
  const ComparisonModel limit = make_model(rep.kappa0, rep.beta0, n);

  for (int k : ks) {
    double kappa, beta;
    limit_sequence(which, n, k, kappa, beta, rep.kappa0, rep.beta0);
    const ComparisonModel mk = make_model(kappa, beta, n);
    LimitStep st;
    st.k = k;
    st.kappa = kappa;
    st.beta = beta;
    st.raw_sup = 0.0;
    st.normalized_sup = 0.0;
    for (double t : t_grid) {
      st.raw_sup = std::max(st.raw_sup, std::abs(f_tilde(mk, t) - f_tilde(limit, t)));
      st.normalized_sup =
          std::max(st.normalized_sup, std::abs(f_tilde(mk, t) / mk.f0() -
                                               f_tilde(limit, t) / limit.f0()));
    }
    rep.steps.push_back(st);
  }

  rep.raw_monotone_decreasing = true;
  rep.normalized_monotone_decreasing = true;
  for (std::size_t i = 1; i < rep.steps.size(); ++i) {
    if (rep.steps[i].raw_sup >= rep.steps[i - 1].raw_sup)
      rep.raw_monotone_decreasing = false;
    if (rep.steps[i].normalized_sup >= rep.steps[i - 1].normalized_sup)
      rep.normalized_monotone_decreasing = false;
  }
  if (which == LimitCase::exceptional) {
    bool raw_stays_large = true;
    for (const LimitStep& st : rep.steps)
      if (st.raw_sup < 0.1) raw_stays_large = false;
    rep.verdict = raw_stays_large && rep.normalized_monotone_decreasing;
  } else {
    rep.verdict = rep.raw_monotone_decreasing;
  }
  return rep;
}

std::string row_name(int row) {
  switch (row) {
    case 1: return "negative curvature, subcritical beta (cosh)";
    case 2: return "negative curvature, critical beta (exponential)";
    case 3: return "negative curvature, supercritical beta > 0 (sinh)";
    case 4: return "negative curvature, supercritical beta < 0 (sinh, collapsing)";
    case 5: return "flat static";
    case 6: return "flat, expanding linear";
    case 7: return "flat, contracting linear (collapsing)";
    case 8: return "positive curvature, shifted sine";
    case 9: return "positive curvature, cosine (collapsing)";
  }
  return "unknown";
}

}  // namespace geomlab
