#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>
#include <vector>

#include "geomlab/builtins.hpp"
#include "geomlab/fields.hpp"
#include "geomlab/hypersurface.hpp"
#include "geomlab/models.hpp"
#include "geomlab/timesep.hpp"
#include "geomlab/volume.hpp"

using namespace geomlab;

namespace {

Vec point(std::initializer_list<double> xs) {
  Vec p = Vec::zero(static_cast<int>(xs.size()));
  int i = 0;
  for (double x : xs) p[i++] = x;
  return p;
}

MetricField flat_plane_metric() {
  MetricField mf;
  mf.chart.n = 2;
  mf.chart.coords = {"x", "y"};
  mf.chart.box[0] = {-2.0, 2.0};
  mf.chart.box[1] = {-2.0, 2.0};
  mf.signature = Signature::riemannian;
  mf.comp = std::make_shared<ConstDiagField>(2, std::vector<double>{1.0, 1.0});
  mf.name = "flat_plane";
  return mf;
}

}  // namespace

TEST_CASE("flat disk areas follow the euclidean law") {
  const MetricField mf = flat_plane_metric();
  const Vec p = point({0.0, 0.0});
  const BallVolumeSeries s =
      riemannian_ball_volume(mf, p, {0.05, 1.0}, RiemannBallConfig{});
  REQUIRE(s.volume.size() == 2);
  CHECK(std::abs(s.volume[1] - M_PI) / M_PI < 5e-3);
  // small balls carry the euclidean leading order
  CHECK(std::abs(s.volume[0] - M_PI * 0.05 * 0.05) / (M_PI * 0.05 * 0.05) < 1e-2);
}

TEST_CASE("the full round sphere volume is recovered at radius pi") {
  const GeomDocument doc = builtin_fixture("round_sphere2");
  const Vec p = point({M_PI / 2.0, 0.0});
  const BallVolumeSeries s =
      riemannian_ball_volume(doc.metric, p, {M_PI}, RiemannBallConfig{});
  CHECK(std::abs(s.volume[0] - 4.0 * M_PI) / (4.0 * M_PI) < 1e-2);
}

TEST_CASE("warped model volumes equal area times the normalized profile") {
  const ComparisonModel m = make_model(1.0, 0.0, 3);
  const MetricField mf = model_metric(m, -0.05, 1.45);
  const Hypersurface sig = time_slice(mf, 0.0, model_slice_box(m.fiber, 3));
  AtlasConfig acfg;
  acfg.t_max = 1.4;
  const NormalExpAtlas atlas(mf, sig, acfg);

  std::vector<double> ts;
  for (double t = 0.2; t <= 1.35; t += 0.05) ts.push_back(t);
  LorentzVolumeConfig cfg;
  cfg.a_grid_per_axis = 12;
  const BallVolumeSeries s = lorentzian_ball_volume(atlas, ts, cfg);
  REQUIRE(s.area > 0.0);
  REQUIRE(s.skipped == 0);

  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double want = s.area * ball_volume_normalized(m, ts[i]);
    CHECK(std::abs(s.volume[i] / want - 1.0) < 1e-4);
  }

  // nesting keeps the series nondecreasing
  for (std::size_t i = 1; i < s.volume.size(); ++i)
    CHECK(s.volume[i] >= s.volume[i - 1]);

  // coarea: the slope of the series matches the shell area
  const std::size_t k = ts.size() / 2;
  const double slope = (s.volume[k + 1] - s.volume[k - 1]) / (ts[k + 1] - ts[k - 1]);
  const double shell = s.area * area_ratio(m, ts[k]);
  CHECK(std::abs(slope / shell - 1.0) < 2e-2);
}

TEST_CASE("volumes vanish with the height of the ball") {
  const ComparisonModel m = make_model(1.0, 0.0, 3);
  const MetricField mf = model_metric(m, -0.05, 1.0);
  const Hypersurface sig = time_slice(mf, 0.0, {{0.3, 0.32}, {-0.015, 0.015}});
  AtlasConfig acfg;
  acfg.t_max = 0.8;
  const NormalExpAtlas atlas(mf, sig, acfg);
  const BallVolumeSeries s =
      lorentzian_ball_volume(atlas, {1e-3}, LorentzVolumeConfig{});
  CHECK(s.volume[0] > 0.0);
  CHECK(s.volume[0] <= 1e-6);
}

TEST_CASE("quadrature and monte carlo estimates agree within three sigma") {
  const MetricField mf = flat_plane_metric();
  const Vec p = point({0.0, 0.0});
  const BallVolumeSeries s =
      riemannian_ball_volume(mf, p, {1.0}, RiemannBallConfig{});
  const McEstimate mc =
      riemannian_ball_volume_mc(mf, p, 1.0, 4000, 20240817, RiemannBallConfig{});
  REQUIRE(mc.sigma > 0.0);
  CHECK(std::abs(mc.value - s.volume[0]) <= 3.0 * mc.sigma);

  const ComparisonModel m = make_model(1.0, 0.0, 3);
  const MetricField lmf = model_metric(m, -0.05, 1.45);
  const Hypersurface sig = time_slice(lmf, 0.0, model_slice_box(m.fiber, 3));
  AtlasConfig acfg;
  acfg.t_max = 1.4;
  const NormalExpAtlas atlas(lmf, sig, acfg);
  LorentzVolumeConfig cfg;
  cfg.a_grid_per_axis = 12;
  const BallVolumeSeries ls = lorentzian_ball_volume(atlas, {0.9}, cfg);
  const McEstimate lmc =
      lorentzian_ball_volume_mc(atlas, 0.9, 20000, 20240817, 1e-3, Exec::serial);
  REQUIRE(lmc.sigma > 0.0);
  CHECK(std::abs(lmc.value - ls.volume[0]) <= 3.0 * lmc.sigma);
}

TEST_CASE("ratio reports locate the worst monotonicity violation") {
  const RatioReport ok = ratio_monotone({1.0, 0.9, 0.8}, {1.0, 1.0, 1.0}, 1e-3);
  CHECK(ok.nonincreasing);
  CHECK(ok.worst_step <= 0.0);

  const RatioReport bad = ratio_monotone({1.0, 0.9, 0.95}, {1.0, 1.0, 1.0}, 1e-3);
  CHECK(!bad.nonincreasing);
  CHECK(bad.worst_index == 1);
  CHECK(bad.worst_step > 0.04);

  // a rise inside the relative slack passes
  const RatioReport slack = ratio_monotone({1.0, 1.0005}, {1.0, 1.0}, 1e-3);
  CHECK(slack.nonincreasing);
}
