#pragma once

#include "geomlab/geodesic.hpp"
#include "geomlab/metric.hpp"

namespace geomlab {

// Point-to-point distance on a 2-D Riemannian chart by geodesic shooting.  A
// fan of unit-speed geodesics leaves p; the firing angle whose path passes
// closest to q (in chart coordinates, periodic axes folded) is refined by
// golden-section search, and the arc parameter at closest approach is the
// distance estimate.
struct ShootConfig {
  int coarse_dirs = 16;   // fan size for the initial angle scan
  double h = 0.02;        // RK step along each trial geodesic
  double t_max = 3.25;    // integrate a little past pi
  double hit_tol = 1e-4;  // chart-coordinate closeness that declares a hit
  int refine_iters = 36;  // golden-section iterations on the angle
};

struct ShootResult {
  bool hit = false;       // closest approach fell below hit_tol
  double distance = 0.0;  // arc parameter at closest approach
  double theta = 0.0;     // firing angle in the orthonormal frame at p
  double miss = 0.0;      // chart-coordinate distance at closest approach
};

ShootResult shooting_distance(const MetricField& mf, const Vec& p, const Vec& q,
                              const ShootConfig& cfg = {});

}  // namespace geomlab
