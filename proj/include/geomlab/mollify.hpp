// Smoothing of reduced-regularity metrics by a normalized bump-weighted
// average over symmetric offsets that move with the evaluation point; jets
// of the smoothed field are the matching weighted averages of the base
// jets at the shifted points.  The offset rule has zero first moment, so
// affine components are reproduced exactly, and second jets stay within
// the essential bound of the base field uniformly in the width.  An offset
// crossing an interface locus moves the average by its weight share of the
// one-sided jump there.  Axes along which no component varies are detected
// and left unshifted, so the product structure of the fixtures is
// preserved exactly.
#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "geomlab/metric.hpp"
#include "geomlab/parallel.hpp"

namespace geomlab {

class MollifiedField : public ComponentField {
 public:
  // width: kernel radius; ppr: offsets per radius along each active axis
  MollifiedField(std::shared_ptr<const ComponentField> base, const ChartDomain& chart,
                 double width, int ppr, double collapse_tol = 1e-13);

  Mat value(const Vec& x) const override;
  bool has_closed_form() const override { return base_->has_closed_form(); }
  void jet1(const Vec& x, Jet1& out) const override;
  void jet2(const Vec& x, Jet2& out) const override;

  double width() const { return w_; }
  bool axis_active(int a) const { return active_[static_cast<std::size_t>(a)]; }

 private:
  std::shared_ptr<const ComponentField> base_;
  int n_ = 0;
  double w_ = 0.0;
  std::array<bool, kMaxDim> active_{};
  std::vector<double> node_u_;  // symmetric offsets in kernel-radius units
  std::vector<double> node_w_;  // matching weights, normalized to sum 1

  void accumulate(const Vec& x, int order, Jet2& out) const;
};

// the smooth approximation with the same chart, signature and orientation;
// interface loci are dropped and derivatives come in closed form
MetricField mollify_metric(const MetricField& base, double width, int ppr);

// sup over a per-axis cell-center lattice of the spectral norm of
// (g_eps - g)(x); exact in the direction sense for the euclidean background
struct MetricDistance {
  double sup = 0.0;
  Vec arg_point;
};
MetricDistance metric_distance_dh(const MetricField& a, const MetricField& b, int per_axis,
                                  Exec exec = Exec::serial);

// halves the kernel width until metric_distance_dh < target; returns the
// calibrated field and reports the final width and distance
struct CalibratedMollification {
  MetricField field;
  double width = 0.0;
  double dh = 0.0;
  int halvings = 0;
  bool converged = false;
};
CalibratedMollification calibrate_mollification(const MetricField& base, double target_dh,
                                                double start_width, int ppr, int dh_grid,
                                                int max_halvings = 12, Exec exec = Exec::serial);

// widened-cone inner comparison metric g_eps + lambda * euclid
MetricField inner_approximation(const MetricField& mollified, double lambda);

// samples X on the null cone of the inner metric at lattice points and
// counts how often the original metric fails to make X strictly timelike
struct ConeCheckReport {
  std::int64_t samples = 0;
  std::int64_t violations = 0;
  double worst = 0.0;  // max of g(X,X) over samples (want < 0)
};
ConeCheckReport cone_nesting_check(const MetricField& original, const MetricField& inner,
                                   std::int64_t target_samples, std::uint64_t seed,
                                   Exec exec = Exec::serial);

}  // namespace geomlab
