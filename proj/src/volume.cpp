#include "geomlab/volume.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "geomlab/directions.hpp"
#include "geomlab/models.hpp"
#include "geomlab/rng.hpp"

namespace geomlab {

namespace {

// integral of the Jacobian interpolant from 0 to r_clip.  The interpolant
// treats jac/s^power as linear per segment and integrates it against the
// exact s^power weight; power = 0 is plain trapezoid.  A point Jacobian
// vanishes like s^(n-1) at the tip, where trapezoid would overshoot the
// smallest radii by percents.
double radial_integral(const JacobianPath& jp, double r_clip, int power) {
  if (jp.t.empty() || r_clip <= jp.t.front()) return 0.0;
  const double p = power;
  double acc = 0.0;
  for (std::size_t k = 1; k < jp.t.size(); ++k) {
    const double t0 = jp.t[k - 1], t1 = jp.t[k];
    if (t1 <= t0) continue;
    const double hi = std::min(t1, r_clip);
    if (hi <= t0) break;
    const double q1 = jp.jac[k] / std::pow(t1, p);
    const double q0 = (power > 0 && t0 <= 0.0) ? q1 : jp.jac[k - 1] / std::pow(t0, p);
    const double slope = (q1 - q0) / (t1 - t0);
    const double alpha = q0 - slope * t0;
    acc += alpha * (std::pow(hi, p + 1) - std::pow(t0, p + 1)) / (p + 1) +
           slope * (std::pow(hi, p + 2) - std::pow(t0, p + 2)) / (p + 2);
    if (hi < t1) break;
  }
  return acc;
}

struct ColumnResult {
  double weight = 0.0;  // area element * cell volume
  double clip = 0.0;
  std::array<double, 64> partial{};  // radial integrals at the requested times
  bool valid = false;
  bool truncated = false;
};

}  // namespace

BallVolumeSeries lorentzian_ball_volume(const NormalExpAtlas& atlas, const std::vector<double>& ts,
                                        const LorentzVolumeConfig& cfg) {
  const Hypersurface& sig = atlas.surface();
  const MetricField& mf = atlas.metric();
  const int m = sig.patch.n;
  const int per = cfg.a_grid_per_axis;
  if (ts.size() > 64) throw std::runtime_error("too many time nodes in one volume call");

  std::int64_t cells = 1;
  double cellvol = 1.0;
  for (int a = 0; a < m; ++a) {
    cells *= per;
    cellvol *= sig.patch.box[static_cast<std::size_t>(a)].extent() / per;
  }
  const double t_need = ts.empty() ? 0.0 : ts.back();

  std::vector<ColumnResult> cols(static_cast<std::size_t>(cells));
  par_for(cfg.exec, cells, [&](std::int64_t idx) {
    ColumnResult& col = cols[static_cast<std::size_t>(idx)];
    Vec u = Vec::zero(m);
    std::int64_t rem = idx;
    for (int a = m - 1; a >= 0; --a) {
      const std::int64_t ia = rem % per;
      rem /= per;
      const Interval& box = sig.patch.box[static_cast<std::size_t>(a)];
      u[a] = box.lo + (static_cast<double>(ia) + 0.5) * box.extent() / per;
    }
    GeoConfig gc;
    gc.h = cfg.jac_h;
    gc.t_end = std::min(t_need, atlas.config().t_max);
    gc.chart_pad = atlas.config().chart_pad;
    const JacobianPath jp = normal_jacobian(mf, sig, u, gc);
    if (!jp.valid || jp.t.empty()) return;
    col.weight = std::abs(jp.area_density) * cellvol;
    double clip = std::min(jp.t.back(), jp.first_zero);
    col.truncated = (jp.base.stop == GeoStop::left_chart);
    if (cfg.clip_at_cut) {
      const CutRecord cut = atlas.cut_time(u, cfg.cut);
      if (!cut.exceeds_horizon) clip = std::min(clip, cut.estimate);
    }
    col.clip = clip;
    for (std::size_t k = 0; k < ts.size(); ++k)
      col.partial[k] = radial_integral(jp, std::min(ts[k], clip), 0);
    col.valid = true;
  });

  BallVolumeSeries out;
  out.t = ts;
  out.volume.assign(ts.size(), 0.0);
  out.min_clip = std::numeric_limits<double>::infinity();
  for (const ColumnResult& col : cols) {
    if (!col.valid) {
      ++out.skipped;
      continue;
    }
    ++out.columns;
    out.area += col.weight;
    out.min_clip = std::min(out.min_clip, col.clip);
    out.any_truncated = out.any_truncated || col.truncated;
    for (std::size_t k = 0; k < ts.size(); ++k) out.volume[k] += col.weight * col.partial[k];
  }
  if (out.columns == 0) out.min_clip = 0.0;
  return out;
}

McEstimate lorentzian_ball_volume_mc(const NormalExpAtlas& atlas, double t, std::int64_t samples,
                                     std::uint64_t seed, double sphere_tol, Exec exec) {
  const MetricField& mf = atlas.metric();
  const int n = mf.chart.n;

  // sampling box: bounds of the family nodes up to time t over feet with foot
  // parameters in A, intersected with the chart
  McEstimate out;
  for (int i = 0; i < n; ++i) {
    out.box[static_cast<std::size_t>(i)] = {std::numeric_limits<double>::infinity(),
                                            -std::numeric_limits<double>::infinity()};
  }
  for (std::int64_t fi = 0; fi < atlas.foot_count(); ++fi) {
    const AtlasFoot& ft = atlas.foot(fi);
    if (!ft.valid || !atlas.surface().patch.contains(ft.u)) continue;
    for (const GeoNode& nd : ft.path.nodes) {
      if (nd.t > t + 2.0 * atlas.config().geo_h) break;
      for (int i = 0; i < n; ++i) {
        auto& iv = out.box[static_cast<std::size_t>(i)];
        iv.lo = std::min(iv.lo, nd.x[i]);
        iv.hi = std::max(iv.hi, nd.x[i]);
      }
    }
  }
  out.box_volume = 1.0;
  for (int i = 0; i < n; ++i) {
    auto& iv = out.box[static_cast<std::size_t>(i)];
    const Interval& chart = mf.chart.box[static_cast<std::size_t>(i)];
    // small margin so boundary effects stay inside the box
    const double pad = 0.02 * chart.extent();
    iv.lo = std::max(chart.lo, iv.lo - pad);
    iv.hi = std::min(chart.hi, iv.hi + pad);
    if (iv.hi <= iv.lo) return out;  // empty family
    out.box_volume *= iv.extent();
  }

  std::vector<double> vals(static_cast<std::size_t>(samples), 0.0);
  std::vector<unsigned char> marks(static_cast<std::size_t>(samples), 0);
  par_for(exec, samples, [&](std::int64_t i) {
    const SampleStream st(seed, static_cast<std::uint64_t>(i));
    Vec x = Vec::zero(n);
    for (int k = 0; k < n; ++k)
      x[k] = st.uniform(static_cast<std::uint64_t>(k),
                        out.box[static_cast<std::size_t>(k)].lo,
                        out.box[static_cast<std::size_t>(k)].hi);
    const BallClass cls = atlas.ball_membership(x, t, sphere_tol, nullptr);
    if (cls == BallClass::outside) return;
    const double dens = std::sqrt(std::abs(det(mf.g(x))));
    if (cls == BallClass::interior) {
      vals[static_cast<std::size_t>(i)] = dens;
      marks[static_cast<std::size_t>(i)] = 1;
    } else {
      vals[static_cast<std::size_t>(i)] = 0.5 * dens;
      marks[static_cast<std::size_t>(i)] = 2;
    }
  });

  double sum = 0.0, sum2 = 0.0;
  for (std::int64_t i = 0; i < samples; ++i) {
    const double v = vals[static_cast<std::size_t>(i)];
    sum += v;
    sum2 += v * v;
    if (marks[static_cast<std::size_t>(i)] == 1) ++out.inside;
    if (marks[static_cast<std::size_t>(i)] == 2) ++out.boundary;
  }
  out.samples = samples;
  const double mean = sum / static_cast<double>(samples);
  const double var = std::max(0.0, sum2 / static_cast<double>(samples) - mean * mean);
  out.value = out.box_volume * mean;
  out.sigma = out.box_volume * std::sqrt(var / static_cast<double>(samples));
  return out;
}

BallVolumeSeries riemannian_ball_volume(const MetricField& mf, const Vec& p,
                                        const std::vector<double>& rs,
                                        const RiemannBallConfig& cfg) {
  const int n = mf.chart.n;
  if (rs.size() > 64) throw std::runtime_error("too many radius nodes in one volume call");

  // g-orthonormal frame at the center
  Vec eig;
  Mat evec;
  sym_eigen(mf.g(p), eig, evec);
  Mat frame = Mat::zero(n);  // columns
  for (int j = 0; j < n; ++j) {
    const double s = 1.0 / std::sqrt(std::abs(eig[j]));
    for (int i = 0; i < n; ++i) frame(i, j) = s * evec(i, j);
  }

  const std::vector<Vec> dirs = unit_directions(n, cfg.directions);
  const double w_dir = unit_sphere_area(n) / static_cast<double>(dirs.size());
  const double r_need = rs.empty() ? 0.0 : rs.back();

  std::vector<ColumnResult> cols(dirs.size());
  par_for(cfg.exec, static_cast<std::int64_t>(dirs.size()), [&](std::int64_t di) {
    ColumnResult& col = cols[static_cast<std::size_t>(di)];
    const Vec& om = dirs[static_cast<std::size_t>(di)];
    Vec v = Vec::zero(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) v[i] += frame(i, j) * om[j];
    GeoConfig gc;
    gc.h = cfg.jac_h;
    gc.t_end = r_need;
    const JacobianPath jp = point_jacobian(mf, p, v, gc);
    if (!jp.valid || jp.t.empty()) return;
    col.weight = w_dir;
    col.clip = std::min(jp.t.back(), jp.first_zero);
    col.truncated = (jp.base.stop == GeoStop::left_chart);
    for (std::size_t k = 0; k < rs.size(); ++k)
      col.partial[k] = radial_integral(jp, std::min(rs[k], col.clip), n - 1);
    col.valid = true;
  });

  BallVolumeSeries out;
  out.t = rs;
  out.volume.assign(rs.size(), 0.0);
  out.min_clip = std::numeric_limits<double>::infinity();
  for (const ColumnResult& col : cols) {
    if (!col.valid) {
      ++out.skipped;
      continue;
    }
    ++out.columns;
    out.min_clip = std::min(out.min_clip, col.clip);
    out.any_truncated = out.any_truncated || col.truncated;
    for (std::size_t k = 0; k < rs.size(); ++k) out.volume[k] += col.weight * col.partial[k];
  }
  if (out.columns == 0) out.min_clip = 0.0;
  return out;
}

McEstimate riemannian_ball_volume_mc(const MetricField& mf, const Vec& p, double r,
                                     std::int64_t samples, std::uint64_t seed,
                                     const RiemannBallConfig& cfg) {
  const int n = mf.chart.n;
  Vec eig;
  Mat evec;
  sym_eigen(mf.g(p), eig, evec);
  Mat frame = Mat::zero(n);
  for (int j = 0; j < n; ++j) {
    const double s = 1.0 / std::sqrt(std::abs(eig[j]));
    for (int i = 0; i < n; ++i) frame(i, j) = s * evec(i, j);
  }
  const double area = unit_sphere_area(n);

  std::vector<double> vals(static_cast<std::size_t>(samples), 0.0);
  par_for(cfg.exec, samples, [&](std::int64_t i) {
    const SampleStream st(seed, static_cast<std::uint64_t>(i));
    // gaussian direction on the frame sphere (Box-Muller), uniform radius
    Vec om = Vec::zero(n);
    for (int k = 0; k < n; ++k) {
      const double u1 = std::max(st.uniform(static_cast<std::uint64_t>(2 * k)), 1e-300);
      const double u2 = st.uniform(static_cast<std::uint64_t>(2 * k + 1));
      om[k] = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    }
    const double nm = norm(om);
    if (nm < 1e-12) return;
    om = (1.0 / nm) * om;
    const double ri = r * st.uniform(static_cast<std::uint64_t>(2 * n));

    Vec v = Vec::zero(n);
    for (int a = 0; a < n; ++a)
      for (int j = 0; j < n; ++j) v[a] += frame(a, j) * om[j];
    GeoConfig gc;
    gc.h = cfg.jac_h;
    gc.t_end = ri;
    const JacobianPath jp = point_jacobian(mf, p, v, gc);
    if (!jp.valid || jp.t.empty()) return;
    if (jp.t.back() < ri - 1e-9 || jp.first_zero < ri) return;  // clipped away
    vals[static_cast<std::size_t>(i)] = r * area * std::max(0.0, jp.jac_at(ri));
  });

  McEstimate out;
  out.samples = samples;
  double sum = 0.0, sum2 = 0.0;
  for (std::int64_t i = 0; i < samples; ++i) {
    const double v = vals[static_cast<std::size_t>(i)];
    sum += v;
    sum2 += v * v;
    if (v > 0.0) ++out.inside;
  }
  const double mean = sum / static_cast<double>(samples);
  const double var = std::max(0.0, sum2 / static_cast<double>(samples) - mean * mean);
  out.value = mean;
  out.sigma = std::sqrt(var / static_cast<double>(samples));
  return out;
}

RatioReport ratio_monotone(const std::vector<double>& num, const std::vector<double>& den,
                           double tol_mono) {
  RatioReport rep;
  rep.ratio.resize(num.size());
  for (std::size_t i = 0; i < num.size(); ++i)
    rep.ratio[i] = den[i] != 0.0 ? num[i] / den[i] : 0.0;
  for (std::size_t i = 0; i + 1 < rep.ratio.size(); ++i) {
    const double r0 = rep.ratio[i], r1 = rep.ratio[i + 1];
    const double step = (r1 - r0) / std::max(std::abs(r0), 1e-300);
    if (step > rep.worst_step) {
      rep.worst_step = step;
      rep.worst_index = static_cast<int>(i);
    }
    if (r1 > r0 * (1.0 + tol_mono)) rep.nonincreasing = false;
  }
  return rep;
}

}  // namespace geomlab
