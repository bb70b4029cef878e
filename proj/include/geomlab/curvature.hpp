// Sampled verification of Ricci lower bounds.  Riemannian mode tests
// Ric(X,X) >= (n-1)*kappa for g-unit X; Lorentzian mode tests the same
// inequality over g-unit timelike X built from a future-oriented boost
// ladder, capped by the background-norm budget ||X||_h <= h_cap.
#pragma once

#include <cstdint>

#include "geomlab/metric.hpp"
#include "geomlab/parallel.hpp"

namespace geomlab {

struct BoundCheckConfig {
  double kappa = 0.0;
  int grid_per_axis = 4;   // sample lattice resolution (cell centers)
  int directions = 32;     // unit directions; spatial ones in the Lorentzian case
  int boosts = 6;          // ladder 0..boosts inclusive per spatial direction
  double h_cap = 3.0;      // background-norm budget for timelike probes
  Exec exec = Exec::serial;
};

struct BoundReport {
  double kappa = 0.0;
  double min_margin = 0.0;  // min over probes of Ric(X,X) - (n-1)*kappa
  Vec point;                // where the minimum was attained
  Vec direction;            // the probe vector X attaining it
  std::int64_t evaluated = 0;
  std::int64_t skipped_points = 0;  // lattice points without a valid curvature sample
  std::int64_t total_points = 0;
  bool holds(double tol) const { return min_margin >= -tol; }
};

BoundReport check_ricci_bound(const MetricField& mf, const BoundCheckConfig& cfg);

}  // namespace geomlab
