#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "geomlab/builtins.hpp"
#include "geomlab/hypersurface.hpp"
#include "geomlab/metric.hpp"
#include "geomlab/mollify.hpp"
#include "geomlab/models.hpp"

using namespace geomlab;

namespace {

Vec point(std::initializer_list<double> xs) {
  Vec p = Vec::zero(static_cast<int>(xs.size()));
  int i = 0;
  for (double x : xs) p[i++] = x;
  return p;
}

// g(n,n) = -1 and g(n, E_a) = 0 at the embedded point of u
void check_orthonormal(const MetricField& mf, const Hypersurface& sig, const Vec& u,
                       double tol) {
  const Vec x = sig.embed_point(u);
  const NormalData nd = unit_normal(mf, sig, x);
  REQUIRE(nd.valid);
  const MetricValue mv = metric_eval(mf, x);
  CHECK(std::abs(bilinear(mv.g, nd.n, nd.n) + 1.0) < tol);
  Vec basis[kMaxDim];
  sig.tangent_basis(u, basis);
  for (int a = 0; a < sig.dim(); ++a)
    CHECK(std::abs(bilinear(mv.g, nd.n, basis[a])) < tol);
  CHECK(mf.future_pointing(nd.n));
}

}  // namespace

TEST_CASE("slice normals are unit, future pointing, and orthogonal") {
  const GeomDocument mink = builtin_fixture("minkowski3");
  REQUIRE(mink.sigma.has_value());
  for (const Vec& u : {point({0.0, 0.0}), point({0.6, -0.8}), point({-0.9, 0.2})})
    check_orthonormal(mink.metric, *mink.sigma, u, 1e-10);

  const GeomDocument rw = builtin_fixture("rw_c11_strict");
  REQUIRE(rw.sigma.has_value());
  for (const Vec& u : {point({0.7, 0.0}), point({0.45, -0.5}), point({1.05, 0.55})})
    check_orthonormal(rw.metric, *rw.sigma, u, 1e-10);
}

TEST_CASE("comoving slices of warped models have the comoving normal") {
  const ComparisonModel m = make_model(1.0, 0.0, 3);
  const MetricField mf = model_metric(m, -0.05, 1.45);
  const Hypersurface sig = time_slice(mf, 0.0, {{0.4, 1.0}, {-0.5, 0.5}});
  const NormalData nd = unit_normal(mf, sig, point({0.0, 0.7, 0.1}));
  REQUIRE(nd.valid);
  CHECK(std::abs(nd.n[0] - 1.0) < 1e-10);
  CHECK(std::abs(nd.n[1]) < 1e-10);
  CHECK(std::abs(nd.n[2]) < 1e-10);
}

TEST_CASE("tilted plane in flat spacetime has the boosted normal") {
  const GeomDocument mink = builtin_fixture("minkowski2");
  const auto& coords = mink.metric.chart.coords;

  Hypersurface sig;
  sig.F = parse_expr("t - 0.5*x", coords);
  for (int i = 0; i < 2; ++i) sig.dF.push_back(diff_expr(sig.F, i));
  sig.patch.n = 1;
  sig.patch.coords = {"u"};
  sig.patch.box[0] = {-1.0, 1.0};
  const std::vector<std::string> params = {"u"};
  sig.embed.push_back(parse_expr("0.5*u", params));
  sig.embed.push_back(parse_expr("u", params));
  for (const ExprPtr& e : sig.embed)
    sig.dembed.push_back({diff_expr(e, 0)});

  const Vec x = point({0.25, 0.5});
  const NormalData nd = unit_normal(mink.metric, sig, x);
  REQUIRE(nd.valid);
  const double s = 1.0 / std::sqrt(1.0 - 0.25);
  CHECK(std::abs(nd.n[0] - s) < 1e-10);
  CHECK(std::abs(nd.n[1] - 0.5 * s) < 1e-10);
  // a flat plane in flat space is totally geodesic
  CHECK(std::abs(mean_curvature(mink.metric, sig, x)) < 1e-8);
}

TEST_CASE("mean curvature of model slices reproduces the expansion parameter") {
  for (const auto& p : {std::pair{1.0, 0.0}, std::pair{0.0, -1.0},
                        std::pair{-1.0, 1.0}}) {
    const ComparisonModel m = make_model(p.first, p.second, 3);
    const MetricField mf = model_metric(m, -0.2, 0.4);
    const Hypersurface sig = time_slice(mf, 0.0, {{0.4, 1.0}, {-0.5, 0.5}});
    for (const Vec& u : {point({0.5, 0.0}), point({0.9, -0.3})}) {
      const double h = mean_curvature(mf, sig, sig.embed_point(u));
      CHECK(std::abs(h - p.second) < 1e-6);
    }
  }
}

TEST_CASE("mean curvature scan covers the patch lattice") {
  const GeomDocument rw = builtin_fixture("rw_c11_strict");
  const MeanCurvatureReport rep =
      mean_curvature_scan(rw.metric, *rw.sigma, 6);
  CHECK(rep.evaluated == 36);
  CHECK(rep.skipped == 0);
  // the zero slice of the cosine warp is maximal
  CHECK(std::abs(rep.max_h) < 1e-8);
}

TEST_CASE("mean curvature of smoothed metrics approaches the base value") {
  const GeomDocument rw = builtin_fixture("rw_c11_strict");
  const std::vector<Interval> ubox = {{0.4, 1.0}, {-0.5, 0.5}};
  // slice near the curvature interface so the kernel first straddles it,
  // then pulls clear as the width shrinks
  const Hypersurface base_sig = time_slice(rw.metric, 0.45, ubox);

  std::vector<Vec> us;
  for (double a : {0.45, 0.7, 0.95})
    for (double b : {-0.3, 0.3}) us.push_back(point({a, b}));

  std::vector<double> base_h;
  for (const Vec& u : us) {
    const double h = mean_curvature(rw.metric, base_sig, base_sig.embed_point(u));
    REQUIRE(!std::isnan(h));
    base_h.push_back(h);
  }

  double prev = 1e9;
  for (double width : {0.2, 0.1, 0.05}) {
    const MetricField smooth = mollify_metric(rw.metric, width, 3);
    const Hypersurface sig = time_slice(smooth, 0.45, ubox);
    double dev = 0.0;
    for (std::size_t i = 0; i < us.size(); ++i) {
      const double h = mean_curvature(smooth, sig, sig.embed_point(us[i]));
      REQUIRE(!std::isnan(h));
      dev = std::max(dev, std::abs(h - base_h[i]));
    }
    CHECK(dev < prev);
    prev = dev;
  }
}
