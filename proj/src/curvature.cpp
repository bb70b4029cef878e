#include "geomlab/curvature.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "geomlab/directions.hpp"

namespace geomlab {

namespace {

struct PointResult {
  double min_margin = std::numeric_limits<double>::infinity();
  int arg_dir = -1;
  int arg_boost = 0;
  bool skipped = false;
};

// Largest boost parameter keeping ||cosh(s) e0 + sinh(s) u||_euclid within cap.
double max_boost(const Vec& e0, const Vec& u, double cap) {
  const int n = e0.n;
  auto norm_at = [&](double s) {
    const double ch = std::cosh(s), sh = std::sinh(s);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      const double c = ch * e0[i] + sh * u[i];
      acc += c * c;
    }
    return std::sqrt(acc);
  };
  if (norm_at(0.0) >= cap) return 0.0;
  double hi = 1.0;
  while (norm_at(hi) < cap && hi < 60.0) hi *= 2.0;
  if (hi >= 60.0) return 60.0;
  double lo = hi * 0.5;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    (norm_at(mid) < cap ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

BoundReport check_ricci_bound(const MetricField& mf, const BoundCheckConfig& cfg) {
  const int n = mf.chart.n;
  const bool lorentzian = mf.signature == Signature::lorentzian;

  // cell-center lattice over the chart box
  std::vector<Vec> pts;
  {
    const int m = cfg.grid_per_axis;
    std::int64_t total = 1;
    for (int a = 0; a < n; ++a) total *= m;
    pts.reserve(static_cast<std::size_t>(total));
    for (std::int64_t idx = 0; idx < total; ++idx) {
      Vec x;
      x.n = n;
      std::int64_t rem = idx;
      for (int a = 0; a < n; ++a) {
        const int cell = static_cast<int>(rem % m);
        rem /= m;
        const Interval& iv = mf.chart.box[static_cast<std::size_t>(a)];
        x[a] = iv.lo + (cell + 0.5) * (iv.hi - iv.lo) / m;
      }
      pts.push_back(x);
    }
  }

  const std::vector<Vec> dirs =
      lorentzian ? unit_directions(n - 1, cfg.directions) : unit_directions(n, cfg.directions);
  const int nboost = lorentzian ? cfg.boosts + 1 : 1;
  const double co = static_cast<double>(n - 1) * cfg.kappa;

  std::vector<PointResult> res(pts.size());

  auto probe_point = [&](std::int64_t p) {
    PointResult r;
    const Vec& x = pts[static_cast<std::size_t>(p)];
    CurvatureSample cs = ricci_at(mf, x);
    if (!cs.valid) {
      r.skipped = true;
      res[static_cast<std::size_t>(p)] = r;
      return;
    }
    const Mat g = mf.g(x);
    Vec eig;
    Mat q;
    sym_eigen(g, eig, q);
    int negatives = 0;
    double max_abs = 0.0;
    for (int i = 0; i < n; ++i) {
      if (eig[i] < 0.0) ++negatives;
      max_abs = std::max(max_abs, std::fabs(eig[i]));
    }
    bool degenerate = false;
    for (int i = 0; i < n; ++i)
      if (std::fabs(eig[i]) <= 1e-12 * max_abs) degenerate = true;
    if (degenerate || negatives != (lorentzian ? 1 : 0)) {
      r.skipped = true;
      res[static_cast<std::size_t>(p)] = r;
      return;
    }

    if (!lorentzian) {
      for (int d = 0; d < static_cast<int>(dirs.size()); ++d) {
        const Vec& u = dirs[static_cast<std::size_t>(d)];
        const double q2 = bilinear(g, u, u);
        Vec X = (1.0 / std::sqrt(q2)) * u;
        const double margin = bilinear(cs.ricci, X, X) - co;
        if (margin < r.min_margin) {
          r.min_margin = margin;
          r.arg_dir = d;
        }
      }
      res[static_cast<std::size_t>(p)] = r;
      return;
    }

    // g-orthonormal frame, e0 timelike and future pointing
    Vec frame[kMaxDim];
    for (int i = 0; i < n; ++i) {
      Vec c;
      c.n = n;
      for (int j = 0; j < n; ++j) c[j] = q(j, i);
      frame[i] = (1.0 / std::sqrt(std::fabs(eig[i]))) * c;
    }
    if (!mf.future_pointing(frame[0])) frame[0] = -1.0 * frame[0];

    for (int d = 0; d < static_cast<int>(dirs.size()); ++d) {
      Vec u;
      u.n = n;
      for (int j = 0; j < n; ++j) u[j] = 0.0;
      for (int i = 0; i < n - 1; ++i)
        u = u + dirs[static_cast<std::size_t>(d)][i] * frame[i + 1];
      const double s_max = max_boost(frame[0], u, cfg.h_cap);
      for (int b = 0; b < nboost; ++b) {
        const double s = cfg.boosts > 0 ? s_max * b / cfg.boosts : 0.0;
        const double ch = std::cosh(s), sh = std::sinh(s);
        Vec X = ch * frame[0] + sh * u;
        const double margin = bilinear(cs.ricci, X, X) - co;
        if (margin < r.min_margin) {
          r.min_margin = margin;
          r.arg_dir = d;
          r.arg_boost = b;
        }
      }
    }
    res[static_cast<std::size_t>(p)] = r;
  };

  par_for(cfg.exec, static_cast<std::int64_t>(pts.size()), probe_point);

  BoundReport rep;
  rep.kappa = cfg.kappa;
  rep.total_points = static_cast<std::int64_t>(pts.size());
  rep.min_margin = std::numeric_limits<double>::infinity();
  std::int64_t best = -1;
  for (std::int64_t p = 0; p < rep.total_points; ++p) {
    const PointResult& r = res[static_cast<std::size_t>(p)];
    if (r.skipped) {
      ++rep.skipped_points;
      continue;
    }
    rep.evaluated += static_cast<std::int64_t>(dirs.size()) * nboost;
    if (r.min_margin < rep.min_margin) {
      rep.min_margin = r.min_margin;
      best = p;
    }
  }

  if (best >= 0) {
    // rebuild the witness probe at the winning sample
    const PointResult& r = res[static_cast<std::size_t>(best)];
    const Vec& x = pts[static_cast<std::size_t>(best)];
    rep.point = x;
    const Mat g = mf.g(x);
    Vec eig;
    Mat q;
    sym_eigen(g, eig, q);
    if (!lorentzian) {
      const Vec& u = dirs[static_cast<std::size_t>(r.arg_dir)];
      rep.direction = (1.0 / std::sqrt(bilinear(g, u, u))) * u;
    } else {
      Vec frame[kMaxDim];
      for (int i = 0; i < n; ++i) {
        Vec c;
        c.n = n;
        for (int j = 0; j < n; ++j) c[j] = q(j, i);
        frame[i] = (1.0 / std::sqrt(std::fabs(eig[i]))) * c;
      }
      if (!mf.future_pointing(frame[0])) frame[0] = -1.0 * frame[0];
      Vec u;
      u.n = n;
      for (int j = 0; j < n; ++j) u[j] = 0.0;
      for (int i = 0; i < n - 1; ++i)
        u = u + dirs[static_cast<std::size_t>(r.arg_dir)][i] * frame[i + 1];
      const double s =
          cfg.boosts > 0 ? max_boost(frame[0], u, cfg.h_cap) * r.arg_boost / cfg.boosts : 0.0;
      rep.direction = std::cosh(s) * frame[0] + std::sinh(s) * u;
    }
  }
  return rep;
}

}  // namespace geomlab
