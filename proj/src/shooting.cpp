#include "geomlab/shooting.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace geomlab {

namespace {

// squared chart-coordinate distance from a point to q, periodic axes folded
double dist2_to(const ChartDomain& chart, const Vec& x, const Vec& q) {
  double acc = 0.0;
  for (int i = 0; i < chart.n; ++i) {
    const double d = chart.coord_delta(i, x[i], q[i]);
    acc += d * d;
  }
  return acc;
}

struct Probe {
  double miss2 = 0.0;
  double t_star = 0.0;
};

// closest approach of a trial path to q: node scan, then a parabolic pass on
// the squared distance around the best node, re-evaluated on the interpolated
// position so the refinement cannot invent a spurious minimum
Probe closest_approach(const GeodesicPath& path, const ChartDomain& chart, const Vec& q) {
  Probe out;
  out.miss2 = std::numeric_limits<double>::infinity();
  const std::size_t count = path.nodes.size();
  std::size_t best = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const double d2 = dist2_to(chart, path.nodes[i].x, q);
    if (d2 < out.miss2) {
      out.miss2 = d2;
      out.t_star = path.nodes[i].t;
      best = i;
    }
  }
  if (best == 0 || best + 1 >= count) return out;

  const double t0 = path.nodes[best - 1].t, t1 = path.nodes[best].t, t2 = path.nodes[best + 1].t;
  const double a = dist2_to(chart, path.nodes[best - 1].x, q);
  const double b = out.miss2;
  const double c = dist2_to(chart, path.nodes[best + 1].x, q);
  // vertex of the quadratic through (t0,a),(t1,b),(t2,c)
  const double d01 = (b - a) / (t1 - t0);
  const double d12 = (c - b) / (t2 - t1);
  const double curv = (d12 - d01) / (t2 - t0);
  if (curv <= 0.0) return out;
  double tv = 0.5 * (t0 + t1) - 0.5 * d01 / curv;
  tv = std::max(t0, std::min(t2, tv));
  const double dv = dist2_to(chart, path.position(tv), q);
  if (dv < out.miss2) {
    out.miss2 = dv;
    out.t_star = tv;
  }
  return out;
}

}  // namespace

ShootResult shooting_distance(const MetricField& mf, const Vec& p, const Vec& q,
                              const ShootConfig& cfg) {
  const int n = mf.chart.n;
  if (n != 2) throw std::runtime_error("shooting_distance: 2-D charts only");

  // orthonormal frame at p from the eigendecomposition of g
  const Mat gp = mf.g(p);
  Vec eig;
  Mat vecs;
  sym_eigen(gp, eig, vecs);
  Vec e0, e1;
  e0.n = n;
  e1.n = n;
  for (int i = 0; i < n; ++i) {
    e0[i] = vecs(i, 0) / std::sqrt(eig[0]);
    e1[i] = vecs(i, 1) / std::sqrt(eig[1]);
  }

  GeoConfig gc;
  gc.h = cfg.h;
  gc.t_end = cfg.t_max;

  ShootResult result;
  result.miss = std::numeric_limits<double>::infinity();
  auto fire = [&](double theta) {
    Vec v;
    v.n = n;
    const double ct = std::cos(theta), st = std::sin(theta);
    for (int i = 0; i < n; ++i) v[i] = ct * e0[i] + st * e1[i];
    const GeodesicPath path = integrate_geodesic(mf, p, v, gc);
    const Probe pr = closest_approach(path, mf.chart, q);
    const double miss = std::sqrt(pr.miss2);
    if (miss < result.miss) {
      result.miss = miss;
      result.distance = pr.t_star;
      result.theta = theta;
    }
    return miss;
  };

  const double two_pi = 2.0 * std::acos(-1.0);
  const int K = std::max(4, cfg.coarse_dirs);
  double best_theta = 0.0, best_miss = std::numeric_limits<double>::infinity();
  for (int k = 0; k < K; ++k) {
    const double theta = two_pi * k / K;
    const double miss = fire(theta);
    if (miss < best_miss) {
      best_miss = miss;
      best_theta = theta;
    }
  }

  // golden-section refinement on the fan cell around the best coarse angle
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = best_theta - two_pi / K, hi = best_theta + two_pi / K;
  double c = hi - phi * (hi - lo), d = lo + phi * (hi - lo);
  double fc = fire(c), fd = fire(d);
  for (int it = 0; it < cfg.refine_iters; ++it) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - phi * (hi - lo);
      fc = fire(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + phi * (hi - lo);
      fd = fire(d);
    }
  }

  result.hit = result.miss <= cfg.hit_tol;
  return result;
}

}  // namespace geomlab
