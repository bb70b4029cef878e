#include "geomlab/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "geomlab/quadrature.hpp"
#include "rk4_detail.hpp"

namespace geomlab {

namespace {

using detail::OdeSys;
using detail::State;

void pack(const Vec& x, const Vec& v, int n, State& y) {
  for (int i = 0; i < n; ++i) {
    y[static_cast<std::size_t>(i)] = x[i];
    y[static_cast<std::size_t>(n + i)] = v[i];
  }
}

void unpack(const State& y, int n, Vec& x, Vec& v) {
  x.n = n;
  v.n = n;
  for (int i = 0; i < n; ++i) {
    x[i] = y[static_cast<std::size_t>(i)];
    v[i] = y[static_cast<std::size_t>(n + i)];
  }
}

// geodesic rhs: x' = v, v'^k = -Gamma^k_ij v^i v^j.  Event restarts plant
// the state a bisection tolerance away from an interface locus, which can sit
// inside the sliver where closed-form jets are refused; a tiny retry nudge
// along v clears it.
OdeSys geodesic_system(const MetricField& mf) {
  const int n = mf.chart.n;
  OdeSys sys;
  sys.m = 2 * n;
  sys.f = [&mf, n](const double* y, double* dy) {
    Vec x;
    x.n = n;
    for (int i = 0; i < n; ++i) x[i] = y[i];
    Jet1 jet;
    if (!mf.jet1_at(x, jet)) {
      for (int i = 0; i < n; ++i) x[i] += 1e-8 * y[n + i];
      if (!mf.jet1_at(x, jet)) return false;
    }
    std::array<Mat, kMaxDim> gamma;
    christoffel_from_jet(jet, n, gamma);
    for (int i = 0; i < n; ++i) dy[i] = y[n + i];
    for (int k = 0; k < n; ++k) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) acc -= gamma[static_cast<std::size_t>(k)](i, j) * y[n + i] * y[n + j];
      dy[n + k] = acc;
    }
    return true;
  };
  return sys;
}

// acceleration for node storage; nudges along v on an exact interface hit
bool accel_at(const OdeSys& sys, const State& y, int n, Vec& a) {
  State dy{};
  State yt = y;
  if (!sys.f(yt.data(), dy.data())) {
    for (int i = 0; i < n; ++i)
      yt[static_cast<std::size_t>(i)] += 1e-10 * yt[static_cast<std::size_t>(n + i)];
    if (!sys.f(yt.data(), dy.data())) return false;
  }
  a.n = n;
  for (int i = 0; i < n; ++i) a[i] = dy[static_cast<std::size_t>(n + i)];
  return true;
}

}  // namespace

GeodesicPath integrate_geodesic(const MetricField& mf, const Vec& x0, const Vec& v0,
                                const GeoConfig& cfg) {
  const int n = mf.chart.n;
  if (cfg.t_end <= 0.0 || cfg.h <= 0.0)
    throw std::invalid_argument("integrate_geodesic: need positive step and horizon");
  const OdeSys sys = geodesic_system(mf);

  GeodesicPath path;
  State y{};
  pack(x0, v0, n, y);

  auto push_node = [&](double tp, const State& s, bool at_iface) {
    GeoNode node;
    node.t = tp;
    unpack(s, n, node.x, node.v);
    node.at_interface = at_iface;
    node.energy = bilinear(mf.g(node.x), node.v, node.v);
    if (!accel_at(sys, s, n, node.a)) {
      node.a.n = n;
      for (int i = 0; i < n; ++i) node.a[i] = 0.0;
    }
    path.nodes.push_back(node);
  };

  detail::DriveConfig dc;
  dc.h = cfg.h;
  dc.t_end = cfg.t_end;
  dc.chart_pad = cfg.chart_pad;
  dc.max_steps = cfg.max_steps;
  detail::DriveStats stats;
  const detail::DriveStop stop = detail::drive(sys, mf, y, dc, stats, push_node);
  path.stop = stop == detail::DriveStop::reached_end ? GeoStop::reached_end
              : stop == detail::DriveStop::left_chart ? GeoStop::left_chart
                                                      : GeoStop::step_failure;
  path.t_exit = stats.t_exit;
  path.interface_crossings = stats.interface_crossings;
  path.step_error = stats.step_error;
  return path;
}

namespace {

void hermite_eval(const GeoNode& a, const GeoNode& b, double t, bool deriv_slot, Vec& out) {
  const double dt = b.t - a.t;
  const double s = (t - a.t) / dt;
  const double s2 = s * s, s3 = s2 * s;
  const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
  const double h10 = s3 - 2.0 * s2 + s;
  const double h01 = -2.0 * s3 + 3.0 * s2;
  const double h11 = s3 - s2;
  const Vec& p0 = deriv_slot ? a.v : a.x;
  const Vec& p1 = deriv_slot ? b.v : b.x;
  const Vec& m0 = deriv_slot ? a.a : a.v;
  const Vec& m1 = deriv_slot ? b.a : b.v;
  out.n = p0.n;
  for (int i = 0; i < out.n; ++i)
    out[i] = h00 * p0[i] + h10 * dt * m0[i] + h01 * p1[i] + h11 * dt * m1[i];
}

const GeoNode* bracket(const std::vector<GeoNode>& nodes, double t) {
  if (nodes.size() < 2) return nullptr;
  auto it = std::lower_bound(nodes.begin(), nodes.end(), t,
                             [](const GeoNode& n, double tv) { return n.t < tv; });
  if (it == nodes.begin()) return &nodes.front();
  if (it == nodes.end()) return &nodes[nodes.size() - 2];
  return &*(it - 1);
}

}  // namespace

Vec GeodesicPath::position(double t) const {
  if (nodes.empty()) throw std::runtime_error("GeodesicPath: empty");
  if (nodes.size() == 1 || t <= nodes.front().t) return nodes.front().x;
  if (t >= nodes.back().t) return nodes.back().x;
  const GeoNode* a = bracket(nodes, t);
  Vec out;
  hermite_eval(*a, *(a + 1), t, false, out);
  return out;
}

Vec GeodesicPath::velocity(double t) const {
  if (nodes.empty()) throw std::runtime_error("GeodesicPath: empty");
  if (nodes.size() == 1 || t <= nodes.front().t) return nodes.front().v;
  if (t >= nodes.back().t) return nodes.back().v;
  const GeoNode* a = bracket(nodes, t);
  Vec out;
  hermite_eval(*a, *(a + 1), t, true, out);
  return out;
}

Vec exp_map(const MetricField& mf, const Vec& x0, const Vec& v0, double t, const GeoConfig& cfg) {
  if (t == 0.0) {
    // The map at parameter zero is the base point itself; no integration needed.
    if (!mf.chart.contains(x0))
      throw std::invalid_argument("exp_map: base point outside the chart");
    return x0;
  }
  GeoConfig c = cfg;
  c.t_end = t;
  const GeodesicPath p = integrate_geodesic(mf, x0, v0, c);
  if (p.stop != GeoStop::reached_end)
    throw std::runtime_error("exp_map: geodesic left the chart before the target parameter");
  return p.nodes.back().x;
}

double arc_length(const MetricField& mf, const GeodesicPath& path, double t0, double t1) {
  if (t1 <= t0) return 0.0;
  int nseg = 0;
  for (const GeoNode& nd : path.nodes)
    if (nd.t > t0 && nd.t < t1) ++nseg;
  int m = std::max(16, 4 * (nseg + 1));
  if (m % 2) ++m;
  std::vector<double> samples(static_cast<std::size_t>(m + 1));
  for (int i = 0; i <= m; ++i) {
    const double t = t0 + (t1 - t0) * i / m;
    const Vec x = path.position(t);
    const Vec v = path.velocity(t);
    samples[static_cast<std::size_t>(i)] = std::sqrt(std::fabs(bilinear(mf.g(x), v, v)));
  }
  return simpson_samples(samples, t0, t1);
}

double energy_drift(const GeodesicPath& path) {
  if (path.nodes.empty()) return 0.0;
  const double e0 = path.nodes.front().energy;
  double drift = 0.0;
  for (const GeoNode& nd : path.nodes) drift = std::max(drift, std::fabs(nd.energy - e0));
  return drift;
}

std::vector<StepErrorSample> step_error_ladder(const MetricField& mf, const Vec& x0, const Vec& v0,
                                               double t_end, const std::vector<double>& steps) {
  GeoConfig ref_cfg;
  ref_cfg.h = steps.back() / 8.0;
  ref_cfg.t_end = t_end;
  const GeodesicPath ref = integrate_geodesic(mf, x0, v0, ref_cfg);
  if (ref.stop != GeoStop::reached_end)
    throw std::runtime_error("step_error_ladder: reference run left the chart");
  const Vec xr = ref.nodes.back().x;

  std::vector<StepErrorSample> out;
  for (double h : steps) {
    GeoConfig cfg;
    cfg.h = h;
    cfg.t_end = t_end;
    const GeodesicPath p = integrate_geodesic(mf, x0, v0, cfg);
    if (p.stop != GeoStop::reached_end)
      throw std::runtime_error("step_error_ladder: run left the chart");
    const Vec xe = p.nodes.back().x;
    StepErrorSample s;
    s.h = h;
    for (int i = 0; i < xe.n; ++i) s.err = std::max(s.err, std::fabs(xe[i] - xr[i]));
    out.push_back(s);
  }
  return out;
}

}  // namespace geomlab
