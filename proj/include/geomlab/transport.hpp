// Jacobi fields along geodesics via the linearized geodesic system, together
// with a parallel-transported reference frame.  Backs the Jacobian of the
// normal exponential map of a hypersurface (seeded with the tangent basis
// and the normal field's derivative) and of the point exponential map
// (seeded with Y(0) = 0, Y'(0) = frame).
#pragma once

#include <limits>
#include <vector>

#include "geomlab/geodesic.hpp"
#include "geomlab/hypersurface.hpp"

namespace geomlab {

struct JacobianPath {
  GeodesicPath base;       // carrier geodesic with its nodes and stop reason
  std::vector<double> t;   // node parameters
  std::vector<double> jac;  // det[g(Y_a, F_b)](t), normalized for surfaces
  double area_density = 1.0;  // det[g(E_a, F_b)](0): the initial area element
  double first_zero = std::numeric_limits<double>::infinity();
  bool valid = false;

  // linear interpolation between nodes; clamps outside [t.front, t.back]
  double jac_at(double tp) const;
};

// Jacobian of the normal exponential map at patch point u; jac(0) = 1 and
// the area element is reported separately in area_density.
JacobianPath normal_jacobian(const MetricField& mf, const Hypersurface& sig, const Vec& u,
                             const GeoConfig& cfg);

// Jacobian of the point exponential map at x0 along the g-unit direction v0;
// jac(t) ~ t^(n-1) near 0 and is reported unnormalized.
JacobianPath point_jacobian(const MetricField& mf, const Vec& x0, const Vec& v0,
                            const GeoConfig& cfg);

}  // namespace geomlab
