#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "geomlab/builtins.hpp"
#include "geomlab/curvature.hpp"
#include "geomlab/hypersurface.hpp"
#include "geomlab/models.hpp"
#include "geomlab/parallel.hpp"
#include "geomlab/timesep.hpp"
#include "geomlab/volume.hpp"

using namespace geomlab;

TEST_CASE("block reductions are identical under both execution policies") {
  auto f = [](std::int64_t i) {
    return std::sin(0.001 * static_cast<double>(i)) / (1.0 + 0.5 * i);
  };
  const double a = par_sum(Exec::serial, 100000, f);
  const double b = par_sum(Exec::openmp, 100000, f);
  CHECK(a == b);

  const MinWitness ma = par_min(Exec::serial, 100000, f);
  const MinWitness mb = par_min(Exec::openmp, 100000, f);
  CHECK(ma.value == mb.value);
  CHECK(ma.index == mb.index);
  CHECK(ma.index >= 0);
}

TEST_CASE("curvature scans agree bitwise across execution policies") {
  const GeomDocument doc = builtin_fixture("rw_c11_strict");
  BoundCheckConfig cfg;
  cfg.kappa = 1.0;
  cfg.grid_per_axis = 3;
  cfg.directions = 12;
  cfg.boosts = 3;
  cfg.exec = Exec::serial;
  const BoundReport a = check_ricci_bound(doc.metric, cfg);
  cfg.exec = Exec::openmp;
  const BoundReport b = check_ricci_bound(doc.metric, cfg);
  CHECK(a.min_margin == b.min_margin);
  CHECK(a.evaluated == b.evaluated);
  CHECK(a.skipped_points == b.skipped_points);
  for (int i = 0; i < doc.metric.chart.n; ++i) CHECK(a.point[i] == b.point[i]);
}

TEST_CASE("volume quadrature and sampling agree bitwise across policies") {
  const ComparisonModel m = make_model(1.0, 0.0, 3);
  const MetricField mf = model_metric(m, -0.05, 1.2);
  const Hypersurface sig = time_slice(mf, 0.0, model_slice_box(m.fiber, 3));
  AtlasConfig acfg;
  acfg.feet_per_axis = 8;
  acfg.t_max = 1.1;
  const NormalExpAtlas atlas(mf, sig, acfg);

  LorentzVolumeConfig cfg;
  cfg.a_grid_per_axis = 6;
  cfg.exec = Exec::serial;
  const BallVolumeSeries a = lorentzian_ball_volume(atlas, {0.4, 0.8}, cfg);
  cfg.exec = Exec::openmp;
  const BallVolumeSeries b = lorentzian_ball_volume(atlas, {0.4, 0.8}, cfg);
  CHECK(a.area == b.area);
  REQUIRE(a.volume.size() == b.volume.size());
  for (std::size_t i = 0; i < a.volume.size(); ++i)
    CHECK(a.volume[i] == b.volume[i]);

  const McEstimate ma =
      lorentzian_ball_volume_mc(atlas, 0.8, 20000, 7, 1e-3, Exec::serial);
  const McEstimate mb =
      lorentzian_ball_volume_mc(atlas, 0.8, 20000, 7, 1e-3, Exec::openmp);
  CHECK(ma.value == mb.value);
  CHECK(ma.sigma == mb.sigma);
  CHECK(ma.inside == mb.inside);
}

TEST_CASE("atlas construction is independent of the execution policy") {
  const GeomDocument doc = builtin_fixture("minkowski2");
  AtlasConfig cfg;
  cfg.t_max = 1.0;
  cfg.exec = Exec::serial;
  const NormalExpAtlas a(doc.metric, *doc.sigma, cfg);
  cfg.exec = Exec::openmp;
  const NormalExpAtlas b(doc.metric, *doc.sigma, cfg);
  REQUIRE(a.foot_count() == b.foot_count());
  CHECK(a.dropped_feet() == b.dropped_feet());
  for (std::int64_t i = 0; i < a.foot_count(); ++i) {
    const GeodesicPath& pa = a.foot(i).path;
    const GeodesicPath& pb = b.foot(i).path;
    REQUIRE(pa.nodes.size() == pb.nodes.size());
    for (std::size_t k = 0; k < pa.nodes.size(); k += 16)
      for (int c = 0; c < 2; ++c)
        CHECK(pa.nodes[k].x[c] == pb.nodes[k].x[c]);
  }
}

TEST_CASE("at least one worker is always available") {
  CHECK(worker_count(Exec::serial) == 1);
  CHECK(worker_count(Exec::openmp) >= 1);
}
