// Internal fixed-step RK4 driver over a flat state array, shared by the
// geodesic and transport integrators.  The first n state entries must be the
// chart position; the driver bisects interface-locus crossings and chart
// exits, plants a node at each event, and restarts after crossings.
#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <limits>

#include "geomlab/metric.hpp"

namespace geomlab::detail {

constexpr int kMaxState = 64;
using State = std::array<double, kMaxState>;

struct OdeSys {
  int m = 0;
  // writes dy at y; returns false when the rhs is invalid there
  std::function<bool(const double*, double*)> f;
};

inline bool rk4_step(const OdeSys& sys, const State& y, double h, State& out) {
  State k1{}, k2{}, k3{}, k4{}, tmp{};
  if (!sys.f(y.data(), k1.data())) return false;
  for (int i = 0; i < sys.m; ++i)
    tmp[static_cast<std::size_t>(i)] =
        y[static_cast<std::size_t>(i)] + 0.5 * h * k1[static_cast<std::size_t>(i)];
  if (!sys.f(tmp.data(), k2.data())) return false;
  for (int i = 0; i < sys.m; ++i)
    tmp[static_cast<std::size_t>(i)] =
        y[static_cast<std::size_t>(i)] + 0.5 * h * k2[static_cast<std::size_t>(i)];
  if (!sys.f(tmp.data(), k3.data())) return false;
  for (int i = 0; i < sys.m; ++i)
    tmp[static_cast<std::size_t>(i)] =
        y[static_cast<std::size_t>(i)] + h * k3[static_cast<std::size_t>(i)];
  if (!sys.f(tmp.data(), k4.data())) return false;
  for (int i = 0; i < sys.m; ++i)
    out[static_cast<std::size_t>(i)] =
        y[static_cast<std::size_t>(i)] +
        h / 6.0 *
            (k1[static_cast<std::size_t>(i)] + 2.0 * k2[static_cast<std::size_t>(i)] +
             2.0 * k3[static_cast<std::size_t>(i)] + k4[static_cast<std::size_t>(i)]);
  return true;
}

// one step of size h as two half steps, plus the halving error estimate
inline bool rk4_step_doubled(const OdeSys& sys, const State& y, double h, State& out,
                             double& err_est) {
  State big{}, half{};
  if (!rk4_step(sys, y, h, big)) return false;
  if (!rk4_step(sys, y, 0.5 * h, half)) return false;
  if (!rk4_step(sys, half, 0.5 * h, out)) return false;
  err_est = 0.0;
  for (int i = 0; i < sys.m; ++i) {
    const double d =
        std::fabs(big[static_cast<std::size_t>(i)] - out[static_cast<std::size_t>(i)]) / 15.0;
    if (d > err_est) err_est = d;
  }
  return true;
}

enum class DriveStop { reached_end, left_chart, step_failure };

struct DriveConfig {
  double h = 0.01;
  double t_end = 1.0;
  double chart_pad = 0.0;
  int max_steps = 200000;
};

struct DriveStats {
  double t_exit = 0.0;
  int interface_crossings = 0;
  double step_error = 0.0;
};

// node(t, y, at_interface) is called for the initial state and after every
// accepted step or event
inline DriveStop drive(const OdeSys& sys, const MetricField& mf, State& y, const DriveConfig& cfg,
                       DriveStats& stats,
                       const std::function<void(double, const State&, bool)>& node) {
  const int n = mf.chart.n;
  auto locus_offset = [](const State& s, const InterfaceLocus& L) {
    return s[static_cast<std::size_t>(L.axis)] - L.value;
  };
  auto state_pos = [n](const State& s) {
    Vec x;
    x.n = n;
    for (int i = 0; i < n; ++i) x[i] = s[static_cast<std::size_t>(i)];
    return x;
  };

  double t = 0.0;
  node(t, y, false);
  int steps = 0;
  while (t < cfg.t_end - 1e-14) {
    if (++steps > cfg.max_steps) {
      stats.t_exit = t;
      return DriveStop::step_failure;
    }
    const double h = std::min(cfg.h, cfg.t_end - t);
    State y1{};
    double err = 0.0;
    if (!rk4_step_doubled(sys, y, h, y1, err)) {
      stats.t_exit = t;
      return DriveStop::step_failure;
    }
    stats.step_error = std::max(stats.step_error, err);

    // earliest event inside (t, t+h]: interface crossing or chart exit
    double s_event = std::numeric_limits<double>::infinity();
    bool event_iface = false;
    for (const InterfaceLocus& L : mf.loci) {
      const double f0 = locus_offset(y, L), f1 = locus_offset(y1, L);
      if (f0 == 0.0) continue;  // departing a node already on the locus
      if ((f0 < 0.0) == (f1 < 0.0) && f1 != 0.0) continue;
      double lo = 0.0, hi = h;
      State ytmp{};
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (!rk4_step(sys, y, mid, ytmp)) break;
        const double fm = locus_offset(ytmp, L);
        if ((fm < 0.0) == (f0 < 0.0) && fm != 0.0) lo = mid;
        else hi = mid;
        if (hi - lo < 1e-10 * h) break;
      }
      if (hi < s_event) {
        s_event = hi;
        event_iface = true;
      }
    }
    if (!mf.chart.contains(state_pos(y1), cfg.chart_pad)) {
      double lo = 0.0, hi = h;
      State ytmp{};
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (!rk4_step(sys, y, mid, ytmp)) break;
        if (mf.chart.contains(state_pos(ytmp), cfg.chart_pad)) lo = mid;
        else hi = mid;
        if (hi - lo < 1e-10 * h) break;
      }
      if (lo < s_event) {
        s_event = lo;  // last parameter still inside
        event_iface = false;
      }
    }

    if (std::isfinite(s_event)) {
      State ye = y;
      if (s_event > 0.0 && !rk4_step(sys, y, s_event, ye)) {
        stats.t_exit = t;
        return DriveStop::step_failure;
      }
      if (event_iface) {
        t += s_event;
        y = ye;
        node(t, y, true);
        ++stats.interface_crossings;
        continue;  // restart at the crossing
      }
      if (s_event > 1e-14) {
        t += s_event;
        y = ye;
        node(t, y, false);
      }
      stats.t_exit = t;
      return DriveStop::left_chart;
    }

    t += h;
    y = y1;
    node(t, y, false);
  }
  stats.t_exit = t;
  return DriveStop::reached_end;
}

}  // namespace geomlab::detail
