#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "geomlab/builtins.hpp"
#include "geomlab/geodesic.hpp"
#include "geomlab/metric.hpp"
#include "geomlab/mollify.hpp"
#include "geomlab/transport.hpp"

using namespace geomlab;

namespace {

Vec point(std::initializer_list<double> xs) {
  Vec p = Vec::zero(static_cast<int>(xs.size()));
  int i = 0;
  for (double x : xs) p[i++] = x;
  return p;
}

}  // namespace

TEST_CASE("flat geodesics are straight lines") {
  const GeomDocument doc = builtin_fixture("minkowski3");
  const Vec x0 = point({0.0, 0.2, -0.4});
  const Vec v0 = point({1.0, 0.3, 0.5});
  GeoConfig cfg;
  cfg.t_end = 1.5;
  const GeodesicPath path = integrate_geodesic(doc.metric, x0, v0, cfg);
  CHECK(path.stop == GeoStop::reached_end);
  const Vec end = path.position(1.5);
  for (int i = 0; i < 3; ++i)
    CHECK(std::abs(end[i] - (x0[i] + 1.5 * v0[i])) < 1e-10);
  CHECK(energy_drift(path) < 1e-12);
}

TEST_CASE("equatorial great circle closes after a full revolution") {
  const GeomDocument doc = builtin_fixture("round_sphere2");
  const Vec x0 = point({M_PI / 2.0, 0.0});
  const Vec v0 = point({0.0, 1.0});
  GeoConfig cfg;
  cfg.h = 0.005;
  cfg.t_end = 2.0 * M_PI;
  const GeodesicPath path = integrate_geodesic(doc.metric, x0, v0, cfg);
  REQUIRE(path.stop == GeoStop::reached_end);
  const Vec end = path.position(2.0 * M_PI);
  CHECK(std::abs(end[0] - M_PI / 2.0) < 1e-6);
  CHECK(std::abs(end[1] - 2.0 * M_PI) < 1e-6);
}

TEST_CASE("running into the chart boundary reports the exit") {
  const GeomDocument doc = builtin_fixture("round_sphere2");
  const GeodesicPath path = integrate_geodesic(
      doc.metric, point({0.3, 0.0}), point({-1.0, 0.0}), GeoConfig{});
  CHECK(path.stop == GeoStop::left_chart);
  CHECK(path.t_exit < 0.31);
}

TEST_CASE("energy along smooth geodesics is conserved to tight tolerance") {
  const GeomDocument doc = builtin_fixture("round_sphere2");
  GeoConfig cfg;
  cfg.t_end = 6.0;
  const GeodesicPath path = integrate_geodesic(
      doc.metric, point({1.2, 0.0}), point({0.3, 0.9}), cfg);
  REQUIRE(path.stop == GeoStop::reached_end);
  CHECK(energy_drift(path) < 1e-7);
}

TEST_CASE("exponential map identities hold on flat space") {
  const GeomDocument doc = builtin_fixture("minkowski3");
  const Vec p = point({0.1, -0.2, 0.3});
  const Vec w = point({1.0, 0.4, -0.2});
  const Vec at_zero = exp_map(doc.metric, p, w, 0.0, GeoConfig{});
  for (int i = 0; i < 3; ++i) CHECK(at_zero[i] == p[i]);
  const Vec at_one = exp_map(doc.metric, p, w, 1.0, GeoConfig{});
  for (int i = 0; i < 3; ++i) CHECK(std::abs(at_one[i] - (p[i] + w[i])) < 1e-10);
}

TEST_CASE("comoving lines of a warped model are geodesics") {
  const ComparisonModel m = make_model(1.0, 0.0, 3);
  const MetricField mf = model_metric(m, -0.05, 1.45);
  Vec x0 = Vec::zero(3);
  x0[1] = 0.5 * (mf.chart.box[1].lo + mf.chart.box[1].hi);
  x0[2] = 0.5 * (mf.chart.box[2].lo + mf.chart.box[2].hi);
  Vec v0 = Vec::zero(3);
  v0[0] = 1.0;
  const Vec end = exp_map(mf, x0, v0, 1.2, GeoConfig{});
  CHECK(std::abs(end[0] - 1.2) < 1e-8);
  CHECK(std::abs(end[1] - x0[1]) < 1e-8);
  CHECK(std::abs(end[2] - x0[2]) < 1e-8);
}

TEST_CASE("second order remainder of the exponential map stays bounded") {
  const GeomDocument doc = builtin_fixture("round_sphere2");
  const Vec p = point({1.0, 0.0});
  const Vec w = point({0.0, 1.0});
  auto remainder = [&](double s) {
    const Vec e = exp_map(doc.metric, p, w, s, GeoConfig{});
    double d = 0.0;
    for (int i = 0; i < 2; ++i)
      d = std::max(d, std::abs(e[i] - (p[i] + s * w[i])));
    return d / (s * s);
  };
  const double q1 = remainder(1e-2);
  const double q2 = remainder(5e-3);
  CHECK(q1 > 0.0);
  CHECK(std::abs(q1 / q2 - 1.0) < 0.5);
}

TEST_CASE("arc length integrates speed along the curve") {
  const GeomDocument sphere = builtin_fixture("round_sphere2");
  GeoConfig cfg;
  cfg.t_end = 2.0;
  const GeodesicPath gc = integrate_geodesic(
      sphere.metric, point({M_PI / 2.0, 0.0}), point({0.0, 1.0}), cfg);
  CHECK(std::abs(arc_length(sphere.metric, gc, 0.0, 2.0) - 2.0) < 1e-8);

  const GeomDocument mink = builtin_fixture("minkowski2");
  GeoConfig mcfg;
  mcfg.t_end = 1.0;
  const GeodesicPath tl = integrate_geodesic(
      mink.metric, point({0.0, 0.0}), point({2.0, 1.0}), mcfg);
  CHECK(std::abs(arc_length(mink.metric, tl, 0.0, 1.0) - std::sqrt(3.0)) < 1e-8);
  const GeodesicPath nl = integrate_geodesic(
      mink.metric, point({0.0, 0.0}), point({1.0, 1.0}), mcfg);
  CHECK(arc_length(mink.metric, nl, 0.0, 1.0) < 1e-7);
}

TEST_CASE("step halving gains fourth order on smooth metrics") {
  const GeomDocument doc = builtin_fixture("round_sphere2");
  const auto ladder = step_error_ladder(doc.metric, point({1.2, 0.0}),
                                        point({0.3, 0.9}), 1.5, {0.04, 0.02});
  REQUIRE(ladder.size() == 2);
  REQUIRE(ladder[1].err > 0.0);
  CHECK(ladder[0].err / ladder[1].err > 14.0);
}

TEST_CASE("step halving across a curvature interface keeps second order") {
  const GeomDocument doc = builtin_fixture("revolution_c11");
  const Vec x0 = point({1.0, 0.0});
  const MetricValue mv = metric_eval(doc.metric, x0);
  Vec v0 = Vec::zero(2);
  v0[0] = 0.8;
  v0[1] = 0.6 / std::sqrt(mv.g(1, 1));
  GeoConfig cfg;
  cfg.t_end = 0.6;
  const GeodesicPath probe = integrate_geodesic(doc.metric, x0, v0, cfg);
  REQUIRE(probe.stop == GeoStop::reached_end);
  REQUIRE(probe.interface_crossings >= 1);
  const auto ladder =
      step_error_ladder(doc.metric, x0, v0, 0.6, {0.04, 0.02});
  REQUIRE(ladder[1].err > 0.0);
  CHECK(ladder[0].err / ladder[1].err > 3.5);
}

TEST_CASE("normal jacobian is unity on flat slices and warped on models") {
  const GeomDocument mink = builtin_fixture("minkowski3");
  REQUIRE(mink.sigma.has_value());
  GeoConfig cfg;
  cfg.t_end = 1.0;
  const JacobianPath flat =
      normal_jacobian(mink.metric, *mink.sigma, point({0.2, -0.3}), cfg);
  REQUIRE(flat.valid);
  CHECK(std::abs(flat.jac_at(0.0) - 1.0) < 1e-12);
  CHECK(std::abs(flat.jac_at(0.5) - 1.0) < 1e-10);
  CHECK(std::abs(flat.jac_at(1.0) - 1.0) < 1e-10);

  const ComparisonModel m = make_model(1.0, 0.0, 3);
  const MetricField mf = model_metric(m, -0.05, 1.45);
  const Hypersurface sig = time_slice(mf, 0.0, {{0.4, 1.0}, {-0.5, 0.5}});
  GeoConfig mcfg;
  mcfg.t_end = 0.9 * m.collapse;
  const JacobianPath jp = normal_jacobian(mf, sig, point({0.7, 0.0}), mcfg);
  REQUIRE(jp.valid);
  double worst = 0.0;
  for (double tau = 0.0; tau <= 0.9 * m.collapse; tau += 0.05) {
    const double want = std::pow(f_tilde(m, tau) / m.f0(), m.n - 1);
    worst = std::max(worst, std::abs(jp.jac_at(tau) - want));
  }
  CHECK(worst < 1e-5);
}

TEST_CASE("geodesics of the smoothed family converge to the base flow") {
  const GeomDocument doc = builtin_fixture("revolution_c11");
  const Vec x0 = point({1.05, 0.0});
  const MetricValue mv = metric_eval(doc.metric, x0);
  GeoConfig cfg;
  cfg.t_end = 0.5;

  std::vector<Vec> dirs;
  for (int k = 0; k < 10; ++k) {
    const double a = 2.0 * M_PI * k / 10.0;
    Vec v = Vec::zero(2);
    v[0] = std::cos(a);
    v[1] = std::sin(a) / std::sqrt(mv.g(1, 1));
    dirs.push_back(v);
  }

  auto family_deviation = [&](double width) {
    const MetricField smooth = mollify_metric(doc.metric, width, 3);
    double dev = 0.0;
    for (const Vec& v : dirs) {
      const GeodesicPath base = integrate_geodesic(doc.metric, x0, v, cfg);
      const GeodesicPath eps = integrate_geodesic(smooth, x0, v, cfg);
      if (base.stop != GeoStop::reached_end || eps.stop != GeoStop::reached_end)
        continue;
      for (double t = 0.0; t <= 0.5; t += 0.05) {
        const Vec dv = eps.velocity(t) - base.velocity(t);
        dev = std::max(dev, norm(dv));
      }
    }
    return dev;
  };

  const double d1 = family_deviation(0.1);
  const double d2 = family_deviation(0.05);
  REQUIRE(d2 > 0.0);
  CHECK(d1 / d2 > 1.5);
}
