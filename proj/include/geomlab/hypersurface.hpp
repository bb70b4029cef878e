// Embedded hypersurfaces carried in two synchronized forms: a level function
// F = 0 for side tests and normals, and a parametrized patch covering the
// base region A whose balls get measured.  Mean curvature is the trace of
// the shape operator of the future (resp. outward) unit normal.
#pragma once

#include <cstdint>
#include <vector>

#include "geomlab/expr.hpp"
#include "geomlab/metric.hpp"
#include "geomlab/parallel.hpp"

namespace geomlab {

struct Hypersurface {
  ExprPtr F;                // level function of the chart coordinates
  std::vector<ExprPtr> dF;  // its gradient
  double future_sign = 1.0;  // the future (outward) side is future_sign * F > 0
  double grad_floor = 1e-8;  // ||dF|| below this marks the normal invalid

  ChartDomain patch;                         // n-1 parameters over region A
  std::vector<ExprPtr> embed;                // chart coords as functions of params
  std::vector<std::vector<ExprPtr>> dembed;  // [coord][param]

  int dim() const { return patch.n; }
  int ambient_dim() const { return static_cast<int>(embed.size()); }

  Vec embed_point(const Vec& u) const;
  void tangent_basis(const Vec& u, Vec* E) const;  // E[a] = d(embed)/du_a
  double level(const Vec& x) const { return F->eval(x.a.data()); }
  Vec level_gradient(const Vec& x) const;
};

// slice x0 = t0 parametrized by the remaining coordinates over ubox
Hypersurface time_slice(const MetricField& mf, double t0, const std::vector<Interval>& ubox);

struct NormalData {
  Vec n;  // unit, future pointing (Lorentzian) or on the future_sign side
  bool valid = false;
};

NormalData unit_normal(const MetricField& mf, const Hypersurface& sig, const Vec& x);

// dn(i,j) = d_j n^i of the extended unit normal field, by finite differences
// that stay one-sided near interface loci and chart edges; false when any
// stencil point lacks a valid normal
bool normal_field_derivative(const MetricField& mf, const Hypersurface& sig, const Vec& x,
                             Mat& dn);

// H(x) = tr(P A), A^i_j = d_j n^i + Gamma^i_{jk} n^k, P the tangential
// projector; finite differences of the extended unit normal field, one-sided
// near interface loci.  Returns NaN when the normal or curvature data is
// invalid at x.
double mean_curvature(const MetricField& mf, const Hypersurface& sig, const Vec& x);

struct MeanCurvatureReport {
  double max_h = 0.0;
  Vec arg_u;
  std::int64_t evaluated = 0;
  std::int64_t skipped = 0;
};

// max of H over a cell-center lattice on the patch
MeanCurvatureReport mean_curvature_scan(const MetricField& mf, const Hypersurface& sig,
                                        int per_axis, Exec exec = Exec::serial);

}  // namespace geomlab
