// Metric fields on a single chart.  A MetricField bundles the chart box, the
// signature, the smoothness class with its interface loci (coordinate
// hypersurfaces where second derivatives may jump), a time-orientation
// covector for Lorentzian fields, and a component provider.  Derivatives come
// either from the provider's closed forms (exact up to expression evaluation)
// or from finite differences with one-sided stencils near loci and chart
// boundaries.
#pragma once

#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "geomlab/mat.hpp"

namespace geomlab {

struct Interval {
  double lo = 0.0, hi = 1.0;
  double extent() const { return hi - lo; }
};

struct ChartDomain {
  int n = 0;
  std::vector<std::string> coords;
  std::array<Interval, kMaxDim> box{};
  // per-axis period (0 = not periodic); metric components must share it
  std::array<double, kMaxDim> period{};

  bool contains(const Vec& x, double pad = 0.0) const {
    for (int i = 0; i < n; ++i)
      if (x[i] < box[static_cast<std::size_t>(i)].lo - pad ||
          x[i] > box[static_cast<std::size_t>(i)].hi + pad)
        return false;
    return true;
  }

  // signed residual b - a on axis i, reduced to the shortest representative
  // when the axis is periodic
  double coord_delta(int i, double a, double b) const {
    double d = b - a;
    const double p = period[static_cast<std::size_t>(i)];
    if (p > 0.0) {
      d = std::fmod(d, p);
      if (d > 0.5 * p) d -= p;
      if (d < -0.5 * p) d += p;
    }
    return d;
  }
};

enum class Signature { riemannian, lorentzian };
enum class Smoothness { smooth, c11 };
enum class DerivMode { closed_form, finite_difference };

// Locus of reduced smoothness: the hypersurface { x[axis] = value }.
struct InterfaceLocus {
  int axis;
  double value;
};

// First and second metric jets.  dg[k](i,j) = d_k g_ij, d2g[k*kMaxDim+l](i,j)
// = d_k d_l g_ij (both (k,l) orders filled).
struct Jet1 {
  Mat g;
  std::array<Mat, kMaxDim> dg;
};

struct Jet2 {
  Mat g;
  std::array<Mat, kMaxDim> dg;
  std::array<Mat, kMaxDim * kMaxDim> d2g;
};

// Component provider.  value() must work anywhere in the chart (plus the
// small pad finite differencing needs); closed-form jets are optional.
class ComponentField {
 public:
  virtual ~ComponentField() = default;
  virtual Mat value(const Vec& x) const = 0;
  virtual bool has_closed_form() const { return false; }
  virtual void jet1(const Vec& x, Jet1& out) const;
  virtual void jet2(const Vec& x, Jet2& out) const;
};

struct MetricField {
  ChartDomain chart;
  Signature signature = Signature::riemannian;
  Smoothness smoothness = Smoothness::smooth;
  std::vector<InterfaceLocus> loci;
  DerivMode deriv_mode = DerivMode::closed_form;
  Vec time_covector;  // lorentzian only: X future-pointing iff omega(X) > 0
  std::shared_ptr<const ComponentField> comp;
  std::string name;

  // Relative step for finite differences, as a fraction of the box extent of
  // each axis.
  double fd_step_rel = 1e-4;

  Mat g(const Vec& x) const { return comp->value(x); }

  // Jets in the active derivative mode.  Returns false (invalid) when the
  // point is too close to an interface locus for the stencil to stay one
  // sided, or sits on a locus in closed-form mode.
  bool jet1_at(const Vec& x, Jet1& out) const;
  bool jet2_at(const Vec& x, Jet2& out) const;

  double fd_step(int axis) const {
    return fd_step_rel * chart.box[static_cast<std::size_t>(axis)].extent();
  }

  bool future_pointing(const Vec& v) const { return dot(time_covector, v) > 0.0; }
};

struct MetricValue {
  Mat g;
  bool signature_ok;
};

// Evaluates the metric with domain and degeneracy checks.  Throws
// std::runtime_error when the point is outside the chart or |det g| is below
// the degeneracy tolerance.
MetricValue metric_eval(const MetricField& mf, const Vec& x, double det_tol = 1e-12);

// Signature from eigenvalue signs.
bool signature_matches(const Mat& g, Signature sig);

struct ChristoffelValue {
  std::array<Mat, kMaxDim> gamma;  // gamma[k](i,j) = Gamma^k_ij
  bool valid;
};

struct CurvatureSample {
  Mat ricci;
  bool valid;
};

ChristoffelValue christoffel_at(const MetricField& mf, const Vec& x);
CurvatureSample ricci_at(const MetricField& mf, const Vec& x);

// Christoffels straight from a first jet (no validity logic).
void christoffel_from_jet(const Jet1& jet, int n, std::array<Mat, kMaxDim>& gamma);

// Their first derivatives from a second jet: out[m][k](i,j) = d_m Gamma^k_ij.
void dchristoffel_from_jet(const Jet2& jet, int n,
                           std::array<std::array<Mat, kMaxDim>, kMaxDim>& out);

}  // namespace geomlab
