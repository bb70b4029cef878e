#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "geomlab/builtins.hpp"
#include "geomlab/hypersurface.hpp"
#include "geomlab/models.hpp"
#include "geomlab/timesep.hpp"

using namespace geomlab;

namespace {

Vec point(std::initializer_list<double> xs) {
  Vec p = Vec::zero(static_cast<int>(xs.size()));
  int i = 0;
  for (double x : xs) p[i++] = x;
  return p;
}

}  // namespace

TEST_CASE("flat separation maximizes the proper time over the slice") {
  const GeomDocument doc = builtin_fixture("minkowski2");
  AtlasConfig cfg;
  cfg.t_max = 2.5;
  const NormalExpAtlas atlas(doc.metric, *doc.sigma, cfg);
  CHECK(atlas.foot_count() > 0);

  const TimeSepResult res = atlas.time_separation(point({2.0, 1.0}));
  REQUIRE(res.covered);
  CHECK(std::abs(res.tau - 2.0) < 1e-4);
  REQUIRE(!res.witnesses.empty());
  CHECK(std::abs(res.witnesses.front().u[0] - 1.0) < 5e-3);
  CHECK(res.foot_in_A);
  CHECK(!res.lower_bound_only);
}

TEST_CASE("points on the past side separate by zero") {
  const GeomDocument doc = builtin_fixture("minkowski2");
  const NormalExpAtlas atlas(doc.metric, *doc.sigma, AtlasConfig{});
  const TimeSepResult res = atlas.time_separation(point({-0.3, 0.2}));
  CHECK(res.covered);
  CHECK(res.tau == 0.0);
  CHECK(!res.lower_bound_only);
}

TEST_CASE("comoving separation is exact across the model family") {
  const double pairs[][2] = {{-1.0, 1.0}, {-1.0, 2.0},  {-1.0, 3.0},
                             {-1.0, -3.0}, {0.0, 0.0},  {0.0, 1.0},
                             {0.0, -1.0},  {1.0, 1.0},  {1.0, 0.0}};
  for (const auto& p : pairs) {
    const ComparisonModel m = make_model(p[0], p[1], 3);
    const double horizon = model_horizon(m);
    const MetricField mf = model_metric(m, -0.05, horizon);
    const Hypersurface sig = time_slice(mf, 0.0, model_slice_box(m.fiber, 3));
    AtlasConfig cfg;
    cfg.feet_per_axis = 12;
    cfg.t_max = horizon;
    const NormalExpAtlas atlas(mf, sig, cfg);

    for (double fr : {0.35, 0.6}) {
      Vec u = Vec::zero(2);
      for (int a = 0; a < 2; ++a) {
        const Interval iv = sig.patch.box[static_cast<std::size_t>(a)];
        u[a] = iv.lo + fr * iv.extent();
      }
      Vec probe = sig.embed_point(u);
      for (double t0 : {0.45 * horizon, 0.8 * horizon}) {
        probe[0] = t0;
        const TimeSepResult res = atlas.time_separation(probe);
        REQUIRE(res.covered);
        CHECK(std::abs(res.tau - t0) < 1e-4);
        CHECK(res.foot_in_A);
        REQUIRE(!res.witnesses.empty());
        for (int a = 0; a < 2; ++a)
          CHECK(std::abs(res.witnesses.front().u[a] - u[a]) < 2e-3);
      }
    }
  }
}

TEST_CASE("normal probes are consistent with the cut estimate") {
  const ComparisonModel m = make_model(1.0, 0.0, 3);
  const double horizon = model_horizon(m);
  const MetricField mf = model_metric(m, -0.05, horizon);
  const Hypersurface sig = time_slice(mf, 0.0, model_slice_box(m.fiber, 3));
  AtlasConfig cfg;
  cfg.t_max = horizon;
  const NormalExpAtlas atlas(mf, sig, cfg);

  Vec u = Vec::zero(2);
  u[0] = 0.7;
  const CutRecord cut = atlas.cut_time(u, CutConfig{});
  CHECK(std::abs(cut.estimate - M_PI / 2.0) < 1e-2);

  const GeodesicPath gamma = atlas.normal_geodesic(u);
  for (double fr : {0.3, 0.5, 0.8}) {
    const double t = fr * cut.estimate;
    const TimeSepResult res = atlas.time_separation(gamma.position(t));
    REQUIRE(res.covered);
    CHECK(std::abs(res.tau - t) < 1e-3);
    CHECK(res.tau >= t - 1e-3);
  }
}

TEST_CASE("flat slices admit no cut inside the search horizon") {
  const GeomDocument doc = builtin_fixture("minkowski2");
  AtlasConfig cfg;
  cfg.t_max = 1.5;
  const NormalExpAtlas atlas(doc.metric, *doc.sigma, cfg);
  Vec u = Vec::zero(1);
  const CutRecord cut = atlas.cut_time(u, CutConfig{});
  CHECK(cut.exceeds_horizon);
}

TEST_CASE("search boundaries mark results as lower bounds only") {
  const GeomDocument doc = builtin_fixture("minkowski2");
  AtlasConfig cfg;
  cfg.t_max = 1.0;
  const NormalExpAtlas atlas(doc.metric, *doc.sigma, cfg);

  // witness time within two steps of the horizon
  const TimeSepResult near_top = atlas.time_separation(point({0.99, 0.0}));
  REQUIRE(near_top.covered);
  CHECK(near_top.lower_bound_only);

  // maximizing foot lands in the padded margin outside A
  const TimeSepResult off_patch = atlas.time_separation(point({0.2, 1.35}));
  REQUIRE(off_patch.covered);
  CHECK(std::abs(off_patch.tau - 0.2) < 1e-3);
  CHECK(!off_patch.foot_in_A);
  CHECK(off_patch.lower_bound_only);
}

TEST_CASE("ball membership classifies by separation and foot location") {
  const ComparisonModel m = make_model(1.0, 0.0, 3);
  const MetricField mf = model_metric(m, -0.05, 1.45);
  const Hypersurface sig = time_slice(mf, 0.0, model_slice_box(m.fiber, 3));
  AtlasConfig cfg;
  cfg.t_max = 1.4;
  const NormalExpAtlas atlas(mf, sig, cfg);

  const Vec mid = point({0.3, 0.7, 0.0});
  CHECK(atlas.ball_membership(mid, 0.6, 1e-3) == BallClass::interior);
  CHECK(atlas.ball_membership(point({0.9, 0.7, 0.0}), 0.6, 1e-3) == BallClass::outside);
  CHECK(atlas.ball_membership(point({0.6, 0.7, 0.0}), 0.6, 1e-3) == BallClass::boundary);
  // past-directed separation is below any positive radius
  CHECK(atlas.ball_membership(point({-0.02, 0.7, 0.0}), 0.6, 1e-3) == BallClass::outside);
  // foot in the padded margin: not in the measured ball even with tau < t
  CHECK(atlas.ball_membership(point({0.3, 1.3, 0.0}), 0.6, 1e-3) == BallClass::outside);
}
