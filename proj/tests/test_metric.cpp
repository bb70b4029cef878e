#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "geomlab/builtins.hpp"
#include "geomlab/curvature.hpp"
#include "geomlab/metric.hpp"
#include "geomlab/models.hpp"

using namespace geomlab;

namespace {

Vec point(std::initializer_list<double> xs) {
  Vec p = Vec::zero(static_cast<int>(xs.size()));
  int i = 0;
  for (double x : xs) p[i++] = x;
  return p;
}

double gamma_error(const MetricField& mf, const MetricField& ref, const Vec& x) {
  const ChristoffelValue a = christoffel_at(mf, x);
  const ChristoffelValue b = christoffel_at(ref, x);
  REQUIRE(a.valid);
  REQUIRE(b.valid);
  double worst = 0.0;
  for (int k = 0; k < mf.chart.n; ++k)
    for (int i = 0; i < mf.chart.n; ++i)
      for (int j = 0; j < mf.chart.n; ++j)
        worst = std::max(worst, std::abs(a.gamma[static_cast<std::size_t>(k)](i, j) -
                                         b.gamma[static_cast<std::size_t>(k)](i, j)));
  return worst;
}

}  // namespace

TEST_CASE("minkowski metrics evaluate to the constant diagonal") {
  const GeomDocument doc = builtin_fixture("minkowski4");
  for (const Vec& p : {point({0.0, 0.0, 0.0, 0.0}), point({1.5, -2.0, 0.7, 2.9})}) {
    const MetricValue mv = metric_eval(doc.metric, p);
    CHECK(mv.signature_ok);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        const double want = i != j ? 0.0 : (i == 0 ? -1.0 : 1.0);
        CHECK(mv.g(i, j) == want);
      }
  }
}

TEST_CASE("metric components are symmetric on every builtin fixture") {
  for (const std::string& name : builtin_names()) {
    const GeomDocument doc = builtin_fixture(name);
    const MetricField& mf = doc.metric;
    Vec p = Vec::zero(mf.chart.n);
    for (int i = 0; i < mf.chart.n; ++i) {
      const Interval iv = mf.chart.box[static_cast<std::size_t>(i)];
      p[i] = iv.lo + 0.37 * (iv.hi - iv.lo);
    }
    const MetricValue mv = metric_eval(mf, p);
    CHECK(mv.signature_ok);
    for (int i = 0; i < mf.chart.n; ++i)
      for (int j = 0; j < mf.chart.n; ++j) CHECK(mv.g(i, j) == mv.g(j, i));
  }
}

TEST_CASE("evaluation outside the chart box is rejected") {
  const GeomDocument doc = builtin_fixture("minkowski2");
  CHECK_THROWS_AS((void)metric_eval(doc.metric, point({0.0, 5.0})),
                  std::exception);
}

TEST_CASE("product fixture matches its displayed metric and ricci matrix") {
  const GeomDocument doc = builtin_fixture("remark");
  const Vec p = point({1.0, 1.0, 1.0});
  const MetricValue mv = metric_eval(doc.metric, p);
  CHECK(std::abs(mv.g(0, 0) + 2.0) < 1e-12);
  CHECK(std::abs(mv.g(1, 1) - 1.0) < 1e-12);
  CHECK(std::abs(mv.g(2, 2) - 1.0) < 1e-12);
  CHECK(std::abs(mv.g(0, 1)) < 1e-12);

  const CurvatureSample cs = ricci_at(doc.metric, p);
  REQUIRE(cs.valid);
  const double want[3][3] = {{1.0, 0.0, 0.0},
                             {0.0, -0.25, -0.75},
                             {0.0, -0.75, -0.25}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(std::abs(cs.ricci(i, j) - want[i][j]) < 1e-8);
}

TEST_CASE("flat metrics have vanishing christoffels and curvature") {
  const GeomDocument doc = builtin_fixture("minkowski3");
  const Vec p = point({0.8, 0.3, -1.1});
  const ChristoffelValue ch = christoffel_at(doc.metric, p);
  REQUIRE(ch.valid);
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(std::abs(ch.gamma[static_cast<std::size_t>(k)](i, j)) < 1e-12);
  const CurvatureSample cs = ricci_at(doc.metric, p);
  REQUIRE(cs.valid);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(std::abs(cs.ricci(i, j)) < 1e-8);
}

TEST_CASE("round sphere christoffels and ricci follow the closed forms") {
  const GeomDocument doc = builtin_fixture("round_sphere2");
  const double th = 1.0, ph = 0.3;
  const Vec p = point({th, ph});
  const ChristoffelValue ch = christoffel_at(doc.metric, p);
  REQUIRE(ch.valid);
  CHECK(std::abs(ch.gamma[0](1, 1) + std::sin(th) * std::cos(th)) < 1e-10);
  CHECK(std::abs(ch.gamma[1](0, 1) - std::cos(th) / std::sin(th)) < 1e-10);

  // unit sphere is Einstein with Ric = (n-1) g = g
  const MetricValue mv = metric_eval(doc.metric, p);
  const CurvatureSample cs = ricci_at(doc.metric, p);
  REQUIRE(cs.valid);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(std::abs(cs.ricci(i, j) - mv.g(i, j)) < 1e-8);
}

TEST_CASE("warped product christoffels carry f f' on the fiber block") {
  const ComparisonModel m = make_model(0.0, -1.0, 2);
  const MetricField mf = model_metric(m, -0.05, 0.6);
  const double t = 0.2;
  Vec p = Vec::zero(2);
  p[0] = t;
  p[1] = 0.5 * (mf.chart.box[1].lo + mf.chart.box[1].hi);
  const ChristoffelValue ch = christoffel_at(mf, p);
  REQUIRE(ch.valid);
  // g = -dt^2 + f^2 dx^2 with f = t - 1 gives Gamma^t_xx = f f'
  const double f = m.f.value(t), df = m.f.d1(t);
  CHECK(std::abs(ch.gamma[0](1, 1) - f * df) < 1e-10);
  CHECK(std::abs(ch.gamma[1](0, 1) - df / f) < 1e-10);
}

TEST_CASE("jets are refused on an interface locus and valid off it") {
  const GeomDocument doc = builtin_fixture("rw_c11_strict");
  Vec p = Vec::zero(3);
  p[0] = 0.5;
  p[1] = 0.8;
  p[2] = 0.0;
  Jet2 jet;
  CHECK(!doc.metric.jet2_at(p, jet));
  p[0] = 0.37;
  CHECK(doc.metric.jet2_at(p, jet));
  const CurvatureSample cs = ricci_at(doc.metric, p);
  CHECK(cs.valid);
}

TEST_CASE("finite differences converge to closed-form christoffels at second order") {
  const GeomDocument doc = builtin_fixture("round_sphere2");
  const Vec p = point({1.1, 0.4});
  MetricField coarse = doc.metric;
  coarse.deriv_mode = DerivMode::finite_difference;
  coarse.fd_step_rel = 2e-3;
  MetricField fine = coarse;
  fine.fd_step_rel = 1e-3;
  const double e_coarse = gamma_error(coarse, doc.metric, p);
  const double e_fine = gamma_error(fine, doc.metric, p);
  REQUIRE(e_fine > 0.0);
  CHECK(e_coarse / e_fine > 3.5);
}

TEST_CASE("constant curvature fixtures meet their ricci bound with no slack") {
  const GeomDocument sphere = builtin_fixture("round_sphere2");
  BoundCheckConfig cfg;
  cfg.kappa = 1.0;
  const BoundReport rep = check_ricci_bound(sphere.metric, cfg);
  CHECK(rep.evaluated > 0);
  CHECK(std::abs(rep.min_margin) < 1e-8);
  CHECK(rep.holds(1e-8));

  const GeomDocument mink = builtin_fixture("minkowski3");
  BoundCheckConfig mc;
  mc.kappa = 0.0;
  const BoundReport mr = check_ricci_bound(mink.metric, mc);
  CHECK(std::abs(mr.min_margin) < 1e-10);
}

TEST_CASE("boost cap ladder exposes unbounded timelike ricci violation") {
  const GeomDocument doc = builtin_fixture("remark");
  double prev = 1.0;
  double last = 0.0;
  for (double cap : {2.0, 5.0, 10.0}) {
    BoundCheckConfig cfg;
    cfg.kappa = 0.0;
    cfg.h_cap = cap;
    const BoundReport rep = check_ricci_bound(doc.metric, cfg);
    CHECK(rep.min_margin < prev);
    prev = rep.min_margin;
    last = rep.min_margin;
  }
  CHECK(last < -10.0);
}
