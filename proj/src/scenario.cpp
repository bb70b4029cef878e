#include "geomlab/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "geomlab/builtins.hpp"
#include "geomlab/curvature.hpp"
#include "geomlab/geodesic.hpp"
#include "geomlab/hypersurface.hpp"
#include "geomlab/mollify.hpp"
#include "geomlab/models.hpp"
#include "geomlab/parallel.hpp"
#include "geomlab/rng.hpp"
#include "geomlab/shooting.hpp"
#include "geomlab/timesep.hpp"
#include "geomlab/volume.hpp"

namespace geomlab {

namespace {

using nlohmann::ordered_json;

constexpr double kPi = 3.14159265358979323846;

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::runtime_error(msg);
}

std::string strf(const char* fmt, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, ap);
  va_end(ap);
  return std::string(buf);
}

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    out.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
  return out;
}

Exec exec_from(const ordered_json& cfg) {
  const std::string s = cfg.value("exec", "openmp");
  if (s == "serial") return Exec::serial;
  if (s == "openmp") return Exec::openmp;
  throw std::runtime_error("unknown exec mode '" + s + "' (serial|openmp)");
}

// pass is derived from the margin so every verdict is recomputable from the
// emitted payload
CheckResult& add_check(RunReport& rep, const std::string& name, double margin,
                       const std::string& detail) {
  CheckResult c;
  c.name = name;
  c.margin = margin;
  c.pass = margin >= 0.0;
  c.detail = detail;
  rep.checks.push_back(c);
  return rep.checks.back();
}

SeriesData& add_series(RunReport& rep, const std::string& name, const std::string& kind,
                       const std::string& xl, const std::string& yl) {
  SeriesData s;
  s.name = name;
  s.kind = kind;
  s.x_label = xl;
  s.y_label = yl;
  rep.series.push_back(s);
  return rep.series.back();
}

Vec vec_from(const ordered_json& arr) {
  Vec v = Vec::zero(static_cast<int>(arr.size()));
  for (int i = 0; i < v.n; ++i) v[i] = arr[static_cast<std::size_t>(i)].get<double>();
  return v;
}

// cell-center lattice over a box, row-major last-axis-fastest
template <class F>
void cell_centers(const std::vector<Interval>& box, int per_axis, F&& body) {
  const int m = static_cast<int>(box.size());
  std::vector<int> idx(static_cast<std::size_t>(m), 0);
  Vec u;
  u.n = m;
  while (true) {
    for (int a = 0; a < m; ++a) {
      const Interval& iv = box[static_cast<std::size_t>(a)];
      u[a] = iv.lo + (idx[static_cast<std::size_t>(a)] + 0.5) * iv.extent() / per_axis;
    }
    body(u);
    int a = m - 1;
    while (a >= 0 && ++idx[static_cast<std::size_t>(a)] == per_axis) {
      idx[static_cast<std::size_t>(a)] = 0;
      --a;
    }
    if (a < 0) break;
  }
}

std::vector<Interval> patch_box(const Hypersurface& sig) {
  std::vector<Interval> box;
  for (int a = 0; a < sig.patch.n; ++a) box.push_back(sig.patch.box[static_cast<std::size_t>(a)]);
  return box;
}

// "model" builds the comparison spacetime from kappa/beta/n; any other value
// is a builtin fixture name or a document path
GeomDocument resolve_fixture(const ordered_json& cfg) {
  require(cfg.contains("metric"), "config needs a 'metric' entry");
  const std::string name = cfg["metric"].get<std::string>();
  if (name == "model") {
    require(cfg.contains("kappa") && cfg.contains("beta"),
            "metric 'model' needs kappa and beta in the config");
    const int n = cfg.value("n", 3);
    const ComparisonModel m = make_model(cfg["kappa"].get<double>(), cfg["beta"].get<double>(), n);
    const double t_lo = cfg.value("model_t_lo", -0.05);
    const double t_hi = cfg.value("model_t_hi", model_horizon(m, 2e-3, 2.0));
    GeomDocument doc;
    doc.metric = model_metric(m, t_lo, t_hi);
    doc.sigma = time_slice(doc.metric, 0.0, model_slice_box(m.fiber, n));
    doc.kappa = m.kappa;
    doc.beta = m.beta;
    doc.has_model_params = true;
    return doc;
  }
  return load_document(name);
}

ComparisonModel model_for(const ordered_json& cfg, const GeomDocument& doc) {
  require(cfg.contains("kappa") || doc.has_model_params,
          "scenario needs comparison parameters: set kappa/beta in the config "
          "or use a fixture that carries them");
  const double kappa = cfg.contains("kappa") ? cfg["kappa"].get<double>() : doc.kappa;
  const double beta = cfg.contains("beta") ? cfg["beta"].get<double>() : doc.beta;
  return make_model(kappa, beta, doc.metric.chart.n);
}

// ---------------------------------------------------------------- table1-audit

void run_table1(const ordered_json& cfg, RunReport& rep) {
  const int n = cfg.value("n", 3);
  const double tol = cfg.value("tol", 1e-6);
  const double probe_t = cfg.value("probe_t", 0.2);
  std::vector<std::array<double, 2>> reps = {{-1, 1}, {-1, 2}, {-1, 3}, {-1, -3}, {0, 0},
                                             {0, 1},  {0, -1}, {1, 1},  {1, 0}};
  if (cfg.contains("reps")) {
    reps.clear();
    for (const auto& e : cfg["reps"]) reps.push_back({e[0].get<double>(), e[1].get<double>()});
  }

  const std::vector<double> tgrid = linspace(0.0, cfg.value("series_t_max", 3.0), 61);
  std::set<int> rows_seen;
  for (std::size_t ri = 0; ri < reps.size(); ++ri) {
    const double kappa = reps[ri][0], beta = reps[ri][1];
    const ComparisonModel m = make_model(kappa, beta, n);
    const bool fresh_row = rows_seen.insert(m.row).second;
    std::string tag = "row" + std::to_string(m.row);
    if (!fresh_row) tag += "-rep" + std::to_string(ri);

    const double t_hi = model_horizon(m, 2e-3, 0.6);
    const MetricField mf = model_metric(m, -0.05, t_hi);
    Vec x0 = Vec::zero(n);
    x0[0] = std::min(probe_t, 0.5 * t_hi);
    for (int k = 1; k < n; ++k) {
      const Interval& iv = mf.chart.box[static_cast<std::size_t>(k)];
      x0[k] = 0.5 * (iv.lo + iv.hi);
    }
    const CurvatureSample cs = ricci_at(mf, x0);
    const double want = (n - 1) * kappa;
    const double ric_err = cs.valid ? std::abs(cs.ricci(0, 0) - want)
                                    : std::numeric_limits<double>::infinity();
    add_check(rep, tag + "-ricci", tol - ric_err,
              strf("Ric(dt,dt)=%.9g target %.9g (kappa=%g beta=%g, %s)",
                   cs.valid ? cs.ricci(0, 0) : 0.0, want, kappa, beta, row_name(m.row).c_str()));

    const Hypersurface sigma = time_slice(mf, 0.0, model_slice_box(m.fiber, n));
    Vec u = Vec::zero(n - 1);
    for (int a = 0; a < n - 1; ++a) {
      const Interval& iv = sigma.patch.box[static_cast<std::size_t>(a)];
      u[a] = 0.5 * (iv.lo + iv.hi);
    }
    const double h = mean_curvature(mf, sigma, sigma.embed_point(u));
    const double h_err = std::isfinite(h) ? std::abs(h - beta)
                                          : std::numeric_limits<double>::infinity();
    add_check(rep, tag + "-mean-curvature", tol - h_err,
              strf("H(Sigma)=%.9g target %.9g", h, beta));

    SeriesData& s = add_series(rep, "ftilde-" + tag, "data", "t", "ftilde");
    s.x = tgrid;
    for (double t : tgrid) s.y.push_back(f_tilde(m, t));
  }

  {
    std::string got;
    for (int r : rows_seen) got += (got.empty() ? "" : ",") + std::to_string(r);
    add_check(rep, "rows-cover-table", rows_seen.size() == 9 ? 1.0 : -1.0,
              "rows seen: " + got);
  }

  const std::pair<LimitCase, const char*> cases[] = {{LimitCase::c1, "c1"},
                                                     {LimitCase::c2, "c2"},
                                                     {LimitCase::c3, "c3"},
                                                     {LimitCase::c4, "c4"},
                                                     {LimitCase::exceptional, "exceptional"}};
  for (const auto& [which, label] : cases) {
    const LimitReport lr = limit_family_check(which, n, tgrid);
    std::string raw, norm;
    SeriesData& sr = add_series(rep, strf("limit-%s-raw", label), "data", "k", "raw_sup");
    SeriesData& sn = add_series(rep, strf("limit-%s-normalized", label), "data", "k",
                                "normalized_sup");
    for (const LimitStep& st : lr.steps) {
      raw += strf("%s%.4g", raw.empty() ? "" : ", ", st.raw_sup);
      norm += strf("%s%.4g", norm.empty() ? "" : ", ", st.normalized_sup);
      sr.x.push_back(st.k);
      sr.y.push_back(st.raw_sup);
      sn.x.push_back(st.k);
      sn.y.push_back(st.normalized_sup);
    }
    add_check(rep, strf("limit-%s", label), lr.verdict ? 1.0 : -1.0,
              "raw sups " + raw + "; normalized sups " + norm);
  }
}

// ----------------------------------------------------------------------- myers

void run_myers(const ordered_json& cfg, RunReport& rep) {
  const GeomDocument doc = resolve_fixture(cfg);
  const MetricField& mf = doc.metric;
  require(mf.signature == Signature::riemannian && mf.chart.n == 2,
          "myers runs on 2-D Riemannian fixtures");

  const double kappa = cfg.value("kappa", 1.0);
  const double ricci_tol = cfg.value("ricci_tol", 1e-6);
  const double tol_pi = cfg.value("tol_pi", 1e-3);
  const std::int64_t pairs = cfg.value("pairs", 1000);
  const Exec exec = exec_from(cfg);
  const double diam = kPi / std::sqrt(kappa);

  {
    BoundCheckConfig bc;
    bc.kappa = kappa;
    bc.grid_per_axis = cfg.value("ricci_grid", 5);
    bc.directions = cfg.value("ricci_directions", 16);
    bc.exec = exec;
    const BoundReport br = check_ricci_bound(mf, bc);
    add_check(rep, "ricci-lower-bound", br.min_margin + ricci_tol,
              strf("min margin %.3g over %lld probes", br.min_margin,
                   static_cast<long long>(br.evaluated)));
  }

  ShootConfig sc;
  const ordered_json shoot = cfg.value("shoot", ordered_json::object());
  sc.coarse_dirs = shoot.value("coarse_dirs", 12);
  sc.h = shoot.value("h", 0.02);
  sc.hit_tol = shoot.value("hit_tol", 1e-4);
  sc.refine_iters = shoot.value("refine_iters", 28);
  const double t_max_pairs = shoot.value("t_max_pairs", 1.8);
  const double t_max_anti = shoot.value("t_max_antipodal", 3.25);

  Vec center = Vec::zero(2);
  center[0] = 0.5 * kPi;
  if (cfg.contains("center")) center = vec_from(cfg["center"]);
  Vec hw = Vec::zero(2);
  hw[0] = hw[1] = 0.55;
  if (cfg.contains("half_width")) hw = vec_from(cfg["half_width"]);

  std::vector<double> dist(static_cast<std::size_t>(pairs), 0.0);
  std::vector<double> miss(static_cast<std::size_t>(pairs), 0.0);
  sc.t_max = t_max_pairs;
  par_for(exec, pairs, [&](std::int64_t i) {
    const SampleStream st(rep.seed, static_cast<std::uint64_t>(i));
    Vec p = Vec::zero(2), q = Vec::zero(2);
    for (int k = 0; k < 2; ++k) {
      p[k] = center[k] + st.uniform(static_cast<std::uint64_t>(k), -hw[k], hw[k]);
      q[k] = center[k] + st.uniform(static_cast<std::uint64_t>(2 + k), -hw[k], hw[k]);
    }
    const ShootResult r = shooting_distance(mf, p, q, sc);
    dist[static_cast<std::size_t>(i)] = r.distance;
    miss[static_cast<std::size_t>(i)] = r.miss;
  });

  double max_d = 0.0, max_miss = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    max_d = std::max(max_d, dist[i]);
    max_miss = std::max(max_miss, miss[i]);
  }

  sc.t_max = t_max_anti;
  Vec ap = Vec::zero(2), aq = Vec::zero(2);
  ap[0] = 0.5 * kPi;
  aq[0] = 0.5 * kPi;
  aq[1] = kPi;
  if (cfg.contains("antipodal")) {
    ap = vec_from(cfg["antipodal"][0]);
    aq = vec_from(cfg["antipodal"][1]);
  }
  const ShootResult anti = shooting_distance(mf, ap, aq, sc);
  max_d = std::max(max_d, anti.distance);

  add_check(rep, "all-pairs-hit", sc.hit_tol - max_miss,
            strf("worst closest approach %.3g over %lld pairs", max_miss,
                 static_cast<long long>(pairs)));
  add_check(rep, "diameter-bound", diam + tol_pi - max_d,
            strf("max sampled distance %.9g, bound pi/sqrt(kappa)=%.9g", max_d, diam));
  add_check(rep, "antipodal-attains-diameter",
            anti.hit ? anti.distance - (diam - tol_pi) : -1.0,
            strf("antipodal distance %.9g (miss %.3g)", anti.distance, anti.miss));

  SeriesData& s = add_series(rep, "pair-distances", "data", "pair", "distance");
  for (std::size_t i = 0; i < dist.size(); ++i) {
    s.x.push_back(static_cast<double>(i));
    s.y.push_back(dist[i]);
  }
}

// --------------------------------------------------------------- bishop-gromov

void run_bishop_gromov(const ordered_json& cfg, RunReport& rep) {
  const GeomDocument doc = resolve_fixture(cfg);
  const MetricField& mf = doc.metric;
  require(mf.signature == Signature::riemannian, "bishop-gromov runs on Riemannian fixtures");
  require(cfg.contains("p"), "bishop-gromov needs a center point 'p'");
  const int n = mf.chart.n;
  const Vec p = vec_from(cfg["p"]);
  const double kappa = cfg.value("kappa", 1.0);
  const double r_max = cfg.value("r_max", 1.0);
  const int r_count = cfg.value("r_count", 50);
  const bool expect_equality = cfg.value("expect_equality", false);
  const double tol_eq = cfg.value("tol_eq", 1e-3);
  const double tol_mono = cfg.value("tol_mono", 1e-3);
  const double tol_bound = cfg.value("tol_bound", 1e-3);
  const double ricci_tol = cfg.value("ricci_tol", 1e-6);
  const Exec exec = exec_from(cfg);

  {
    BoundCheckConfig bc;
    bc.kappa = kappa;
    bc.grid_per_axis = cfg.value("ricci_grid", 5);
    bc.directions = cfg.value("ricci_directions", 16);
    bc.exec = exec;
    const BoundReport br = check_ricci_bound(mf, bc);
    add_check(rep, "ricci-lower-bound", br.min_margin + ricci_tol,
              strf("min margin %.3g over %lld probes (%lld lattice points skipped)",
                   br.min_margin, static_cast<long long>(br.evaluated),
                   static_cast<long long>(br.skipped_points)));
  }

  std::vector<double> rs;
  for (int i = 1; i <= r_count; ++i) rs.push_back(r_max * i / r_count);

  RiemannBallConfig qc;
  const ordered_json quad = cfg.value("quad", ordered_json::object());
  qc.directions = quad.value("directions", 256);
  qc.jac_h = quad.value("jac_h", 5e-3);
  qc.exec = exec;
  const BallVolumeSeries vol = riemannian_ball_volume(mf, p, rs, qc);

  std::vector<double> model;
  for (double r : rs) model.push_back(riemannian_model_volume(kappa, n, r));

  add_check(rep, "no-chart-truncation", vol.any_truncated ? -1.0 : 1.0,
            strf("%lld directions, %lld skipped, min clip %.4g", (long long)vol.columns,
                 (long long)vol.skipped, vol.min_clip));

  const RatioReport rr = ratio_monotone(vol.volume, model, tol_mono);
  if (expect_equality) {
    double worst = 0.0;
    int at = 0;
    for (std::size_t i = 0; i < rr.ratio.size(); ++i) {
      const double d = std::abs(rr.ratio[i] - 1.0);
      if (d > worst) {
        worst = d;
        at = static_cast<int>(i);
      }
    }
    add_check(rep, "ratio-equality", tol_eq - worst,
              strf("max |ratio-1| = %.3g at r=%.4g", worst, rs[static_cast<std::size_t>(at)]));
  } else {
    add_check(rep, "ratio-nonincreasing", tol_mono - rr.worst_step,
              strf("worst relative increase %.3g at index %d", rr.worst_step, rr.worst_index));
    double worst_rel = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rs.size(); ++i)
      worst_rel = std::min(worst_rel,
                           ((1.0 + tol_bound) * model[i] - vol.volume[i]) / model[i]);
    add_check(rep, "volume-below-model", worst_rel,
              strf("min relative slack %.3g against (1+%.1g)*model", worst_rel, tol_bound));
  }

  {
    const ordered_json mc = cfg.value("mc", ordered_json::object());
    RiemannBallConfig mcfg = qc;
    mcfg.jac_h = mc.value("jac_h", 1e-2);
    const std::int64_t samples = mc.value("samples", 4000);
    const McEstimate est = riemannian_ball_volume_mc(mf, p, r_max, samples, rep.seed, mcfg);
    const double dev = std::abs(est.value - vol.volume.back());
    add_check(rep, "mc-agreement", 3.0 * est.sigma - dev,
              strf("quadrature %.6g vs MC %.6g +- %.2g (%lld samples)", vol.volume.back(),
                   est.value, est.sigma, static_cast<long long>(est.samples)));
  }

  SeriesData& sv = add_series(rep, "volume", "data", "r", "volume");
  sv.x = rs;
  sv.y = vol.volume;
  SeriesData& sm = add_series(rep, "model-volume", "data", "r", "volume");
  sm.x = rs;
  sm.y = model;
  SeriesData& sr = add_series(rep, "ratio", "ratio", "r", "volume ratio");
  sr.x = rs;
  sr.y = rr.ratio;
}

// -------------------------------------------------------------- lorentz-volume

void run_lorentz_volume(const ordered_json& cfg, RunReport& rep) {
  const GeomDocument doc = resolve_fixture(cfg);
  const MetricField& mf = doc.metric;
  require(mf.signature == Signature::lorentzian, "lorentz-volume runs on Lorentzian fixtures");
  require(doc.sigma.has_value(), "lorentz-volume needs a hypersurface");
  const Hypersurface& sigma = *doc.sigma;
  const ComparisonModel model = model_for(cfg, doc);
  const bool expect_equality = cfg.value("expect_equality", false);
  const double tol_mono = cfg.value("tol_mono", 1e-3);
  const double tol_eq = cfg.value("tol_eq", 1e-4);
  const double ricci_tol = cfg.value("ricci_tol", 1e-6);
  const double h_tol = cfg.value("h_tol", 1e-6);
  const Exec exec = exec_from(cfg);

  rep.notes.push_back(
      "global hyperbolicity and future causal completeness are assumed by "
      "construction of the fixture, not verified here");

  {
    const ordered_json rc = cfg.value("ricci", ordered_json::object());
    BoundCheckConfig bc;
    bc.kappa = model.kappa;
    bc.grid_per_axis = rc.value("grid", 4);
    bc.directions = rc.value("directions", 16);
    bc.boosts = rc.value("boosts", 6);
    bc.h_cap = rc.value("h_cap", 3.0);
    bc.exec = exec;
    const BoundReport br = check_ricci_bound(mf, bc);
    add_check(rep, "timelike-ricci-bound", br.min_margin + ricci_tol,
              strf("min margin %.3g over %lld timelike probes", br.min_margin,
                   static_cast<long long>(br.evaluated)));
  }
  {
    const MeanCurvatureReport hr =
        mean_curvature_scan(mf, sigma, cfg.value("h_scan_per_axis", 6), exec);
    add_check(rep, "mean-curvature-bound", model.beta + h_tol - hr.max_h,
              strf("max H %.9g, bound beta=%.9g (%lld points)", hr.max_h, model.beta,
                   static_cast<long long>(hr.evaluated)));
  }

  const ordered_json tg = cfg.value("t_grid", ordered_json::object());
  const std::vector<double> ts =
      linspace(tg.value("lo", 0.05), tg.value("hi", 1.30), tg.value("count", 30));

  AtlasConfig ac;
  const ordered_json aj = cfg.value("atlas", ordered_json::object());
  ac.feet_per_axis = aj.value("feet_per_axis", 24);
  ac.foot_pad = aj.value("foot_pad", 0.4);
  ac.geo_h = aj.value("geo_h", 0.01);
  ac.t_max = aj.value("t_max", 1.39);
  ac.exec = exec;
  const NormalExpAtlas atlas(mf, sigma, ac);
  rep.notes.push_back(strf("atlas: %lld feet, %lld dropped",
                           static_cast<long long>(atlas.foot_count()),
                           static_cast<long long>(atlas.dropped_feet())));

  LorentzVolumeConfig vc;
  const ordered_json qj = cfg.value("quad", ordered_json::object());
  vc.a_grid_per_axis = qj.value("a_grid", 16);
  vc.jac_h = qj.value("jac_h", 5e-3);
  vc.clip_at_cut = qj.value("clip_at_cut", true);
  vc.cut.tol_cut = qj.value("tol_cut", 1e-3);
  vc.cut.bracket = qj.value("bracket", 1e-2);
  vc.exec = exec;
  const BallVolumeSeries vol = lorentzian_ball_volume(atlas, ts, vc);
  add_check(rep, "quadrature-columns", vol.skipped == 0 ? 1.0 : -static_cast<double>(vol.skipped),
            strf("%lld columns, %lld skipped, area %.6g", (long long)vol.columns,
                 (long long)vol.skipped, vol.area));

  std::vector<double> den;
  for (double t : ts) den.push_back(vol.area * ball_volume_normalized(model, t));
  const RatioReport rr = ratio_monotone(vol.volume, den, tol_mono);

  if (expect_equality) {
    const double r0 = rr.ratio.empty() ? 1.0 : rr.ratio.front();
    double worst = 0.0;
    for (double r : rr.ratio) worst = std::max(worst, std::abs(r / r0 - 1.0));
    add_check(rep, "ratio-constant", tol_eq - worst,
              strf("max relative drift %.3g from ratio %.6g", worst, r0));
  } else {
    add_check(rep, "ratio-nonincreasing", tol_mono - rr.worst_step,
              strf("worst relative increase %.3g at index %d", rr.worst_step, rr.worst_index));
  }

  {
    const ordered_json mc = cfg.value("mc", ordered_json::object());
    const std::int64_t samples = mc.value("samples", 200000);
    const double sphere_tol = mc.value("sphere_tol", 1e-3);
    const McEstimate est =
        lorentzian_ball_volume_mc(atlas, ts.back(), samples, rep.seed, sphere_tol, exec);
    const double dev = std::abs(est.value - vol.volume.back());
    add_check(rep, "mc-agreement", 3.0 * est.sigma - dev,
              strf("quadrature %.6g vs MC %.6g +- %.2g (%lld samples, %lld inside)",
                   vol.volume.back(), est.value, est.sigma, static_cast<long long>(est.samples),
                   static_cast<long long>(est.inside)));
  }

  SeriesData& sv = add_series(rep, "volume", "data", "t", "volume");
  sv.x = ts;
  sv.y = vol.volume;
  SeriesData& sm = add_series(rep, "model-volume", "data", "t", "volume");
  sm.x = ts;
  sm.y = den;
  SeriesData& sr = add_series(rep, "ratio", "ratio", "t", "volume ratio");
  sr.x = ts;
  sr.y = rr.ratio;
}

// ----------------------------------------------------------- singularity-bound

void run_singularity_bound(const ordered_json& cfg, RunReport& rep) {
  const GeomDocument doc = resolve_fixture(cfg);
  const MetricField& mf = doc.metric;
  require(mf.signature == Signature::lorentzian, "singularity-bound runs on Lorentzian fixtures");
  require(doc.sigma.has_value(), "singularity-bound needs a hypersurface");
  const Hypersurface& sigma = *doc.sigma;
  const ComparisonModel model = model_for(cfg, doc);
  require(model.collapses(), "singularity-bound needs a collapsing comparison model");
  const double b = model.collapse;
  const double tau_tol = cfg.value("tau_tol", 1e-2);
  const double cut_tol = cfg.value("cut_tol", 1e-2);
  const double probe_tol = cfg.value("probe_tol", 1e-3);
  const std::int64_t samples = cfg.value("samples", 10000);
  const Exec exec = exec_from(cfg);

  rep.notes.push_back(
      "global hyperbolicity and future causal completeness are assumed by "
      "construction of the fixture, not verified here");

  AtlasConfig ac;
  const ordered_json aj = cfg.value("atlas", ordered_json::object());
  ac.feet_per_axis = aj.value("feet_per_axis", 24);
  ac.foot_pad = aj.value("foot_pad", 0.4);
  ac.geo_h = aj.value("geo_h", 0.01);
  ac.t_max = aj.value("t_max", 1.7);
  ac.exec = exec;
  const NormalExpAtlas atlas(mf, sigma, ac);

  const double t_top = mf.chart.box[0].hi;
  const std::vector<Interval> ubox = patch_box(sigma);
  const int m = static_cast<int>(ubox.size());

  std::vector<double> taus(static_cast<std::size_t>(samples),
                           -std::numeric_limits<double>::infinity());
  std::vector<char> covered(static_cast<std::size_t>(samples), 0);
  par_for(exec, samples, [&](std::int64_t i) {
    const SampleStream st(rep.seed, static_cast<std::uint64_t>(i));
    Vec x = Vec::zero(mf.chart.n);
    x[0] = st.uniform(0, 0.02, t_top);
    for (int a = 0; a < m; ++a)
      x[a + 1] = st.uniform(static_cast<std::uint64_t>(a + 1),
                            ubox[static_cast<std::size_t>(a)].lo,
                            ubox[static_cast<std::size_t>(a)].hi);
    const TimeSepResult r = atlas.time_separation(x);
    if (r.covered && r.tau > 0.0) {
      covered[static_cast<std::size_t>(i)] = 1;
      taus[static_cast<std::size_t>(i)] = r.tau;
    }
  });
  double max_tau = 0.0;
  std::int64_t ncov = 0;
  for (std::size_t i = 0; i < taus.size(); ++i)
    if (covered[i]) {
      ++ncov;
      max_tau = std::max(max_tau, taus[i]);
    }
  add_check(rep, "tau-below-collapse", b * (1.0 + tau_tol) - max_tau,
            strf("max tau %.6g over %lld covered samples (of %lld), bound %.6g*(1+%.1g)",
                 max_tau, static_cast<long long>(ncov), static_cast<long long>(samples), b,
                 tau_tol));

  CutConfig cc;
  cc.tol_cut = cfg.value("tol_cut", 1e-3);
  cc.bracket = cfg.value("bracket", 1e-2);
  const int cut_feet = cfg.value("cut_feet", 5);
  double worst_cut = 0.0;
  int fired = 0, truncated = 0, idx = 0;
  SeriesData& scut = add_series(rep, "cut-estimates", "data", "foot", "estimate");
  Vec u_center = Vec::zero(m);
  for (int a = 0; a < m; ++a)
    u_center[a] = 0.5 * (ubox[static_cast<std::size_t>(a)].lo + ubox[static_cast<std::size_t>(a)].hi);
  cell_centers(ubox, cut_feet, [&](const Vec& u) {
    const CutRecord cr = atlas.cut_time(u, cc);
    worst_cut = std::max(worst_cut, std::abs(cr.estimate - b));
    if (!cr.exceeds_horizon) ++fired;
    if (cr.truncated) ++truncated;
    scut.x.push_back(idx++);
    scut.y.push_back(cr.estimate);
  });
  add_check(rep, "cut-near-collapse", cut_tol - worst_cut,
            strf("max |estimate - %.6g| = %.3g over %d feet (%d below horizon, %d truncated)",
                 b, worst_cut, idx, fired, truncated));

  {
    const CutRecord cr = atlas.cut_time(u_center, cc);
    const double tp = 0.5 * cr.estimate;
    const GeodesicPath path = atlas.normal_geodesic(u_center);
    const TimeSepResult r = atlas.time_separation(path.position(tp));
    const double err = r.covered ? std::abs(r.tau - tp) : std::numeric_limits<double>::infinity();
    add_check(rep, "tau-probe-consistency", probe_tol - err,
              strf("tau %.9g at parameter %.9g on the central normal ray", r.tau, tp));
  }
}

// ------------------------------------------------------------------- cut-locus

void run_cut_locus(const ordered_json& cfg, RunReport& rep) {
  const GeomDocument doc = resolve_fixture(cfg);
  const MetricField& mf = doc.metric;
  require(mf.signature == Signature::lorentzian, "cut-locus runs on Lorentzian fixtures");
  require(doc.sigma.has_value(), "cut-locus needs a hypersurface");
  const Hypersurface& sigma = *doc.sigma;
  const double witness_tol = cfg.value("witness_tol", 1e-3);
  const double frac_bound = cfg.value("frac_bound", 0.01);
  const std::int64_t samples = cfg.value("samples", 10000);
  const Exec exec = exec_from(cfg);

  AtlasConfig ac;
  const ordered_json aj = cfg.value("atlas", ordered_json::object());
  ac.feet_per_axis = aj.value("feet_per_axis", 24);
  ac.foot_pad = aj.value("foot_pad", 0.4);
  ac.geo_h = aj.value("geo_h", 0.01);
  ac.t_max = aj.value("t_max", 1.7);
  ac.exec = exec;
  const NormalExpAtlas atlas(mf, sigma, ac);

  const double t_top = mf.chart.box[0].hi;
  const std::vector<Interval> ubox = patch_box(sigma);
  const int m = static_cast<int>(ubox.size());

  std::vector<char> cov(static_cast<std::size_t>(samples), 0);
  std::vector<char> twow(static_cast<std::size_t>(samples), 0);
  par_for(exec, samples, [&](std::int64_t i) {
    const SampleStream st(rep.seed, static_cast<std::uint64_t>(i));
    Vec x = Vec::zero(mf.chart.n);
    x[0] = st.uniform(0, 0.05, 0.98 * t_top);
    for (int a = 0; a < m; ++a)
      x[a + 1] = st.uniform(static_cast<std::uint64_t>(a + 1),
                            ubox[static_cast<std::size_t>(a)].lo,
                            ubox[static_cast<std::size_t>(a)].hi);
    const TimeSepResult r = atlas.time_separation(x);
    if (!(r.covered && r.tau > 0.0)) return;
    cov[static_cast<std::size_t>(i)] = 1;
    if (r.distinct_witnesses >= 2 && r.tau - r.second_tau <= witness_tol)
      twow[static_cast<std::size_t>(i)] = 1;
  });
  std::int64_t ncov = 0, ntwo = 0;
  for (std::size_t i = 0; i < cov.size(); ++i) {
    ncov += cov[i];
    ntwo += twow[i];
  }
  const double frac = ncov > 0 ? static_cast<double>(ntwo) / static_cast<double>(ncov) : 1.0;
  add_check(rep, "two-witness-fraction", frac_bound - frac,
            strf("%lld of %lld covered samples carry two maximizer witnesses within %.1g "
                 "(fraction %.4g)",
                 static_cast<long long>(ntwo), static_cast<long long>(ncov), witness_tol, frac));
  add_check(rep, "coverage", static_cast<double>(ncov) - 0.5 * static_cast<double>(samples),
            strf("%lld covered of %lld sampled", static_cast<long long>(ncov),
                 static_cast<long long>(samples)));
}

// --------------------------------------------------------------- mollify-check

// sup over a fixed off-locus lattice of the first-derivative deviation between
// the smoothed and the base metric, plus the smoothed second-derivative sup
struct DerivDeviation {
  double c1 = 0.0;
  double d2 = 0.0;
  std::int64_t skipped = 0;
};

DerivDeviation deriv_deviation(const MetricField& smooth, const MetricField& base, int per_axis) {
  const int n = base.chart.n;
  std::vector<Interval> box;
  for (int a = 0; a < n; ++a) box.push_back(base.chart.box[static_cast<std::size_t>(a)]);
  DerivDeviation out;
  cell_centers(box, per_axis, [&](const Vec& x) {
    Jet1 jb;
    if (!base.jet1_at(x, jb)) {
      ++out.skipped;
      return;
    }
    Jet2 js;
    if (!smooth.jet2_at(x, js)) {
      ++out.skipped;
      return;
    }
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          out.c1 = std::max(out.c1, std::abs(js.dg[static_cast<std::size_t>(k)](i, j) -
                                             jb.dg[static_cast<std::size_t>(k)](i, j)));
          for (int l = 0; l < n; ++l)
            out.d2 = std::max(
                out.d2, std::abs(js.d2g[static_cast<std::size_t>(k * kMaxDim + l)](i, j)));
        }
  });
  return out;
}

void run_mollify_check(const ordered_json& cfg, RunReport& rep) {
  const GeomDocument doc = resolve_fixture(cfg);
  const MetricField& base = doc.metric;
  require(base.signature == Signature::lorentzian, "mollify-check runs on Lorentzian fixtures");
  require(doc.sigma.has_value(), "mollify-check needs a hypersurface");
  require(!base.loci.empty(), "mollify-check needs a fixture with an interface locus");
  const ComparisonModel model = model_for(cfg, doc);

  std::vector<double> eps = {0.1, 0.05, 0.025};
  if (cfg.contains("eps")) {
    eps.clear();
    for (const auto& e : cfg["eps"]) eps.push_back(e.get<double>());
  }
  std::vector<double> deltas = {0.1, 0.05};
  if (cfg.contains("delta")) {
    deltas.clear();
    for (const auto& e : cfg["delta"]) deltas.push_back(e.get<double>());
  }
  std::vector<double> etas = {0.1, 0.05};
  if (cfg.contains("eta")) {
    etas.clear();
    for (const auto& e : cfg["eta"]) etas.push_back(e.get<double>());
  }
  require(std::is_sorted(eps.rbegin(), eps.rend()), "eps list must be decreasing");
  const int ppr = cfg.value("ppr", 3);
  const double start_width = cfg.value("start_width", 0.2);
  const int dh_grid = cfg.value("dh_grid", 6);
  const int deriv_grid = cfg.value("deriv_grid", 6);
  const double lambda_mult = cfg.value("lambda_mult", 2.0);
  const std::int64_t cone_samples = cfg.value("cone_samples", 100000);
  const Exec exec = exec_from(cfg);
  const ordered_json rc = cfg.value("ricci", ordered_json::object());

  const InterfaceLocus locus = base.loci.front();

  std::vector<double> dhs, widths, c1s, d2s, maxhs;
  std::vector<std::vector<double>> margins(deltas.size());
  bool all_converged = true;
  std::vector<CalibratedMollification> cals;
  // each calibration starts at half the previous width, so the family keeps
  // refining even when one width already meets several of the targets
  double start = start_width;
  for (double e : eps) {
    CalibratedMollification cal = calibrate_mollification(base, e, start, ppr, dh_grid, 12, exec);
    start = 0.5 * cal.width;
    all_converged = all_converged && cal.converged;
    dhs.push_back(cal.dh);
    widths.push_back(cal.width);

    const DerivDeviation dev = deriv_deviation(cal.field, base, deriv_grid);
    c1s.push_back(dev.c1);
    d2s.push_back(dev.d2);

    // near-kink probes live on a narrowed copy of the chart so the lattice
    // actually sees the smoothed zone
    MetricField zone = cal.field;
    {
      Interval& iv = zone.chart.box[static_cast<std::size_t>(locus.axis)];
      const Interval full = base.chart.box[static_cast<std::size_t>(locus.axis)];
      iv.lo = std::max(full.lo, locus.value - 2.0 * cal.width);
      iv.hi = std::min(full.hi, locus.value + 2.0 * cal.width);
    }
    for (std::size_t d = 0; d < deltas.size(); ++d) {
      BoundCheckConfig bc;
      bc.kappa = model.kappa - deltas[d];
      bc.grid_per_axis = rc.value("grid", 4);
      bc.directions = rc.value("directions", 12);
      bc.boosts = rc.value("boosts", 6);
      bc.h_cap = rc.value("h_cap", 3.0);
      bc.exec = exec;
      const BoundReport full = check_ricci_bound(cal.field, bc);
      const BoundReport near = check_ricci_bound(zone, bc);
      margins[d].push_back(std::min(full.min_margin, near.min_margin));
    }

    const MeanCurvatureReport hr =
        mean_curvature_scan(cal.field, *doc.sigma, cfg.value("h_scan_per_axis", 5), exec);
    maxhs.push_back(hr.max_h);
    cals.push_back(std::move(cal));
  }

  {
    double worst = std::numeric_limits<double>::infinity();
    std::string detail;
    for (std::size_t i = 0; i < eps.size(); ++i) {
      worst = std::min(worst, eps[i] - dhs[i]);
      detail += strf("%seps %.3g: d_h %.4g (width %.4g)", i ? "; " : "", eps[i], dhs[i],
                     widths[i]);
    }
    add_check(rep, "dh-below-eps", all_converged ? worst : -1.0, detail);
  }
  {
    double min_drop = std::numeric_limits<double>::infinity();
    std::string detail = "sups";
    for (std::size_t i = 0; i < c1s.size(); ++i) {
      if (i) min_drop = std::min(min_drop, c1s[i - 1] - c1s[i]);
      detail += strf(" %.4g", c1s[i]);
    }
    add_check(rep, "c1-deviation-decreasing", min_drop, detail);
  }
  {
    double worst = 0.0;
    std::string detail = "sups";
    for (double v : d2s) {
      worst = std::max(worst, v);
      detail += strf(" %.4g", v);
    }
    add_check(rep, "second-difference-bounded", 2.0 * d2s.front() - worst, detail);
  }

  for (std::size_t d = 0; d < deltas.size(); ++d) {
    // eps0 = top of the largest decreasing suffix where the bound holds
    int first_ok = static_cast<int>(eps.size());
    for (int i = static_cast<int>(eps.size()) - 1; i >= 0; --i) {
      if (margins[d][static_cast<std::size_t>(i)] < 0.0) break;
      first_ok = i;
    }
    std::string detail;
    for (std::size_t i = 0; i < eps.size(); ++i)
      detail += strf("%seps %.3g: margin %.4g", i ? "; " : "", eps[i],
                     margins[d][i]);
    if (first_ok < static_cast<int>(eps.size()))
      detail += strf("; eps0 = %.3g", eps[static_cast<std::size_t>(first_ok)]);
    else
      detail += "; no eps0 in the list";
    add_check(rep, strf("ricci-margin-delta-%g", deltas[d]),
              first_ok < static_cast<int>(eps.size()) ? margins[d].back() : -1.0, detail);
    SeriesData& s = add_series(rep, strf("ricci-margin-delta-%g", deltas[d]), "data", "eps",
                               "min margin");
    s.x = eps;
    s.y = margins[d];
  }

  for (double eta : etas) {
    int first_ok = static_cast<int>(eps.size());
    for (int i = static_cast<int>(eps.size()) - 1; i >= 0; --i) {
      if (maxhs[static_cast<std::size_t>(i)] > model.beta + eta) break;
      first_ok = i;
    }
    std::string detail;
    for (std::size_t i = 0; i < eps.size(); ++i)
      detail += strf("%seps %.3g: max H %.4g", i ? "; " : "", eps[i], maxhs[i]);
    if (first_ok < static_cast<int>(eps.size()))
      detail += strf("; eps0 = %.3g (bound beta+%.2g)", eps[static_cast<std::size_t>(first_ok)],
                     eta);
    else
      detail += "; no eps0 in the list";
    add_check(rep, strf("mean-curvature-eta-%g", eta),
              first_ok < static_cast<int>(eps.size())
                  ? model.beta + eta - maxhs.back()
                  : -1.0,
              detail);
  }

  {
    const double lambda = lambda_mult * dhs.back();
    const MetricField inner = inner_approximation(cals.back().field, lambda);
    const ConeCheckReport cone = cone_nesting_check(base, inner, cone_samples, rep.seed, exec);
    add_check(rep, "cone-nesting",
              cone.violations == 0 ? 1.0 : -static_cast<double>(cone.violations),
              strf("%lld violations over %lld cone samples, worst g(X,X) %.4g (lambda %.4g)",
                   static_cast<long long>(cone.violations), static_cast<long long>(cone.samples),
                   cone.worst, lambda));
  }

  SeriesData& sd = add_series(rep, "dh", "data", "eps", "d_h");
  sd.x = eps;
  sd.y = dhs;
  SeriesData& sc = add_series(rep, "c1-deviation", "data", "eps", "sup |d(g_eps - g)|");
  sc.x = eps;
  sc.y = c1s;
  SeriesData& s2 = add_series(rep, "d2-sup", "data", "eps", "sup |d2 g_eps|");
  s2.x = eps;
  s2.y = d2s;
  SeriesData& sh = add_series(rep, "max-mean-curvature", "data", "eps", "max H");
  sh.x = eps;
  sh.y = maxhs;
}

}  // namespace

// ----------------------------------------------------------------- entry points

std::vector<std::string> scenario_names() {
  return {"bishop-gromov", "lorentz-volume", "myers",     "singularity-bound",
          "mollify-check", "cut-locus",      "table1-audit"};
}

RunReport run_scenario(const ordered_json& config) {
  const auto begin = std::chrono::steady_clock::now();
  require(config.is_object() && config.contains("scenario"),
          "config needs a 'scenario' name");
  const std::string name = config["scenario"].get<std::string>();

  RunReport rep;
  rep.scenario = name;
  rep.seed = config.value("seed", static_cast<std::uint64_t>(20240817));
  rep.config_echo = config;

  if (name == "table1-audit")
    run_table1(config, rep);
  else if (name == "myers")
    run_myers(config, rep);
  else if (name == "bishop-gromov")
    run_bishop_gromov(config, rep);
  else if (name == "lorentz-volume")
    run_lorentz_volume(config, rep);
  else if (name == "singularity-bound")
    run_singularity_bound(config, rep);
  else if (name == "cut-locus")
    run_cut_locus(config, rep);
  else if (name == "mollify-check")
    run_mollify_check(config, rep);
  else {
    std::string msg = "unknown scenario '" + name + "'; valid names:";
    for (const std::string& s : scenario_names()) msg += " " + s;
    throw std::runtime_error(msg);
  }

  rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - begin)
                    .count();
  return rep;
}

bool RunReport::all_pass() const {
  for (const CheckResult& c : checks)
    if (!c.pass) return false;
  return true;
}

ordered_json RunReport::to_json() const {
  ordered_json j;
  j["schema"] = "geomlab-report-v1";
  j["scenario"] = scenario;
  j["seed"] = seed;
  j["all_pass"] = all_pass();
  j["checks"] = ordered_json::array();
  for (const CheckResult& c : checks) {
    ordered_json cj;
    cj["name"] = c.name;
    cj["pass"] = c.pass;
    cj["margin"] = c.margin;
    cj["detail"] = c.detail;
    j["checks"].push_back(cj);
  }
  j["series"] = ordered_json::array();
  for (const SeriesData& s : series) {
    ordered_json sj;
    sj["name"] = s.name;
    sj["kind"] = s.kind;
    sj["x_label"] = s.x_label;
    sj["y_label"] = s.y_label;
    sj["x"] = s.x;
    sj["y"] = s.y;
    j["series"].push_back(sj);
  }
  j["notes"] = notes;
  j["config"] = config_echo;
  return j;
}

namespace {

std::string render_svg(const RunReport& rep) {
  std::vector<const SeriesData*> curves;
  for (const SeriesData& s : rep.series)
    if (s.kind == "ratio" && !s.x.empty()) curves.push_back(&s);

  const double W = 720, H = 440;
  const double px0 = 70, px1 = 690, py0 = 30, py1 = 360;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << W << " " << H
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << strf("<rect x=\"0\" y=\"0\" width=\"%g\" height=\"%g\" fill=\"white\"/>\n", W, H);
  out << strf("<text x=\"%g\" y=\"18\" font-size=\"14\">%s</text>\n", px0,
              (rep.scenario + ": ratio series").c_str());

  if (curves.empty()) {
    out << strf("<text x=\"%g\" y=\"%g\">no ratio series in this report</text>\n", px0,
                0.5 * (py0 + py1));
  } else {
    double xmin = curves[0]->x.front(), xmax = xmin, ymin = curves[0]->y.front(), ymax = ymin;
    for (const SeriesData* s : curves)
      for (std::size_t i = 0; i < s->x.size(); ++i) {
        xmin = std::min(xmin, s->x[i]);
        xmax = std::max(xmax, s->x[i]);
        ymin = std::min(ymin, s->y[i]);
        ymax = std::max(ymax, s->y[i]);
      }
    if (xmax - xmin < 1e-12) {
      xmin -= 1.0;
      xmax += 1.0;
    }
    if (ymax - ymin < 1e-12) {
      ymin -= 1.0;
      ymax += 1.0;
    }
    const double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;
    auto X = [&](double x) { return px0 + (x - xmin) / (xmax - xmin) * (px1 - px0); };
    auto Y = [&](double y) { return py1 - (y - ymin) / (ymax - ymin) * (py1 - py0); };

    out << strf("<rect x=\"%g\" y=\"%g\" width=\"%g\" height=\"%g\" fill=\"none\" "
                "stroke=\"#888\"/>\n",
                px0, py0, px1 - px0, py1 - py0);
    for (int k = 0; k <= 4; ++k) {
      const double y = ymin + (ymax - ymin) * k / 4;
      out << strf("<line x1=\"%g\" y1=\"%.6g\" x2=\"%g\" y2=\"%.6g\" stroke=\"#ddd\"/>\n", px0,
                  Y(y), px1, Y(y));
      out << strf("<text x=\"%g\" y=\"%.6g\" text-anchor=\"end\">%.4g</text>\n", px0 - 6,
                  Y(y) + 4, y);
    }
    out << strf("<text x=\"%g\" y=\"%g\" text-anchor=\"middle\">%.4g</text>\n", px0, py1 + 16,
                xmin);
    out << strf("<text x=\"%g\" y=\"%g\" text-anchor=\"middle\">%.4g</text>\n", px1, py1 + 16,
                xmax);

    const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    for (std::size_t c = 0; c < curves.size(); ++c) {
      const SeriesData* s = curves[c];
      std::string pts;
      for (std::size_t i = 0; i < s->x.size(); ++i)
        pts += strf("%.6g,%.6g ", X(s->x[i]), Y(s->y[i]));
      out << "<polyline fill=\"none\" stroke=\"" << colors[c % 6] << "\" stroke-width=\"1.5\" "
          << "points=\"" << pts << "\"/>\n";
      out << strf("<text x=\"%g\" y=\"%.6g\" fill=\"%s\">%s</text>\n", px0 + 8,
                  py0 + 16 + 16 * static_cast<double>(c), colors[c % 6], s->name.c_str());
    }
  }

  double ty = py1 + 34;
  for (const CheckResult& c : rep.checks) {
    if (c.name.find("ratio") == std::string::npos) continue;
    out << strf("<text x=\"%g\" y=\"%g\" fill=\"%s\">%s: %s (margin %.3g)</text>\n", px0, ty,
                c.pass ? "#2a7" : "#c22", c.name.c_str(), c.pass ? "pass" : "FAIL", c.margin);
    ty += 16;
  }
  out << strf("<text x=\"%g\" y=\"%g\">%s</text>\n", px0, ty,
              rep.all_pass() ? "all checks pass" : "some checks fail");
  out << "</svg>\n";
  return out.str();
}

}  // namespace

std::vector<std::string> emit_report(const RunReport& report,
                                     const std::vector<std::string>& formats,
                                     const std::string& outdir) {
  namespace fs = std::filesystem;
  for (const std::string& f : formats)
    require(f == "json" || f == "csv" || f == "svg", "unknown report format '" + f + "'");
  fs::create_directories(outdir);
  auto want = [&](const char* f) {
    return std::find(formats.begin(), formats.end(), f) != formats.end();
  };
  std::vector<std::string> files;
  auto write_file = [&](const fs::path& p, const std::string& body) {
    std::ofstream os(p, std::ios::binary);
    require(os.good(), "cannot open " + p.string() + " for writing");
    os << body;
    require(os.good(), "write failed for " + p.string());
    files.push_back(p.string());
  };

  if (want("json"))
    write_file(fs::path(outdir) / (report.scenario + "-report.json"),
               report.to_json().dump(2) + "\n");
  if (want("csv")) {
    for (const SeriesData& s : report.series) {
      std::string body = s.x_label + "," + s.y_label + "\n";
      for (std::size_t i = 0; i < s.x.size(); ++i)
        body += strf("%.17g,%.17g\n", s.x[i], s.y[i]);
      write_file(fs::path(outdir) / (report.scenario + "-" + s.name + ".csv"), body);
    }
  }
  if (want("svg"))
    write_file(fs::path(outdir) / (report.scenario + "-ratios.svg"), render_svg(report));
  return files;
}

}  // namespace geomlab
