// Geodesic integration: fixed-base-step RK4 with step-halving error
// estimates, event detection at interface loci and the chart boundary
// (bisected, with a node planted at the crossing and a restart), and cubic
// Hermite dense output from the stored (x, v, a) nodes.
#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "geomlab/metric.hpp"

namespace geomlab {

struct GeoNode {
  double t = 0.0;  // curve parameter
  Vec x, v, a;     // position, velocity, acceleration
  double energy = 0.0;  // g(v,v)
  bool at_interface = false;
};

enum class GeoStop { reached_end, left_chart, step_failure };

struct GeodesicPath {
  std::vector<GeoNode> nodes;
  GeoStop stop = GeoStop::reached_end;
  double t_exit = 0.0;
  int interface_crossings = 0;
  double step_error = 0.0;  // max per-step halving estimate

  Vec position(double t) const;
  Vec velocity(double t) const;
  double t_begin() const { return nodes.front().t; }
  double t_end() const { return nodes.back().t; }
};

struct GeoConfig {
  double h = 0.01;         // base step in the curve parameter
  double t_end = 1.0;      // integrate from 0 to t_end
  double chart_pad = 0.0;  // tolerated excursion past the chart box
  int max_steps = 200000;
};

GeodesicPath integrate_geodesic(const MetricField& mf, const Vec& x0, const Vec& v0,
                                const GeoConfig& cfg);

// convenience: gamma(t) for the geodesic with gamma(0)=x0, gamma'(0)=v0;
// throws if the curve leaves the chart before t
Vec exp_map(const MetricField& mf, const Vec& x0, const Vec& v0, double t, const GeoConfig& cfg);

// integral of sqrt(|g(v,v)|) over [t0, t1] from dense output
double arc_length(const MetricField& mf, const GeodesicPath& path, double t0, double t1);

// max |g(v,v) - g(v,v)(0)| over nodes
double energy_drift(const GeodesicPath& path);

struct StepErrorSample {
  double h = 0.0;
  double err = 0.0;  // sup-norm endpoint error against a fine reference
};

// endpoint error at t_end for each base step, against a reference run at
// steps.back()/8; steps should be decreasing
std::vector<StepErrorSample> step_error_ladder(const MetricField& mf, const Vec& x0, const Vec& v0,
                                               double t_end, const std::vector<double>& steps);

}  // namespace geomlab
