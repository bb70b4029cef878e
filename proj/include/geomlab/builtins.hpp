// Fixture registry and the JSON metric document format.  A document carries
// a metric (builtin by name, explicit component expressions, or a warped
// product) and optionally a hypersurface with its patch.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "geomlab/hypersurface.hpp"
#include "geomlab/metric.hpp"
#include "geomlab/models.hpp"

#include <json.hpp>

namespace geomlab {

struct GeomDocument {
  MetricField metric;
  std::optional<Hypersurface> sigma;
  // natural comparison parameters when the fixture has them
  double kappa = 0.0;
  double beta = 0.0;
  bool has_model_params = false;
};

std::vector<std::string> builtin_names();
GeomDocument builtin_fixture(const std::string& name);

// metric of the comparison spacetime -dt^2 + f(t)^2 h over the standard
// fiber box, with the time axis clipped to [t_lo, t_hi]
MetricField model_metric(const ComparisonModel& m, double t_lo, double t_hi);

// default slice parameter box for a fiber (used for Sigma = {t=0} patches)
std::vector<Interval> model_slice_box(FiberKind fiber, int n);

// sensible integration horizon below collapse for a model
double model_horizon(const ComparisonModel& m, double margin = 2e-3, double cap = 2.0);

GeomDocument parse_document(const nlohmann::json& j);
GeomDocument load_document(const std::string& path);

}  // namespace geomlab
