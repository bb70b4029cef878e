#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>
#include <vector>

#include "geomlab/builtins.hpp"
#include "geomlab/curvature.hpp"
#include "geomlab/expr.hpp"
#include "geomlab/fields.hpp"
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

MetricField affine_plane_metric() {
  MetricField mf;
  mf.chart.n = 2;
  mf.chart.coords = {"x", "y"};
  mf.chart.box[0] = {-1.0, 1.0};
  mf.chart.box[1] = {-1.0, 1.0};
  mf.signature = Signature::riemannian;
  std::vector<ExprPtr> upper;
  for (const char* s : {"1 + 0.3*x + 0.1*y", "0.05*x", "1 - 0.2*y"})
    upper.push_back(parse_expr(s, mf.chart.coords));
  mf.comp = std::make_shared<ExprField>(2, upper);
  mf.name = "affine_plane";
  return mf;
}

// largest second-derivative component over a cell-center lattice
double second_jet_sup(const MetricField& mf, int per_axis) {
  const int n = mf.chart.n;
  double sup = 0.0;
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  while (true) {
    Vec x = Vec::zero(n);
    for (int i = 0; i < n; ++i) {
      const Interval iv = mf.chart.box[static_cast<std::size_t>(i)];
      x[i] = iv.lo + (idx[static_cast<std::size_t>(i)] + 0.5) * iv.extent() / per_axis;
    }
    Jet2 jet;
    if (mf.jet2_at(x, jet)) {
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
              sup = std::max(sup, std::abs(jet.d2g[static_cast<std::size_t>(
                                       a * kMaxDim + b)](i, j)));
    }
    int c = 0;
    while (c < n && ++idx[static_cast<std::size_t>(c)] == per_axis) {
      idx[static_cast<std::size_t>(c)] = 0;
      ++c;
    }
    if (c == n) break;
  }
  return sup;
}

}  // namespace

TEST_CASE("constant metrics pass through the smoother unchanged") {
  const GeomDocument doc = builtin_fixture("minkowski3");
  const MetricField smooth = mollify_metric(doc.metric, 0.1, 3);
  for (const Vec& p : {point({0.5, 0.0, 0.0}), point({1.2, -0.7, 0.4})}) {
    const Mat a = doc.metric.g(p);
    const Mat b = smooth.g(p);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(std::abs(a(i, j) - b(i, j)) < 1e-12);
    Jet1 jet;
    REQUIRE(smooth.jet1_at(p, jet));
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          CHECK(std::abs(jet.dg[static_cast<std::size_t>(k)](i, j)) < 1e-12);
  }
}

TEST_CASE("affine components are reproduced exactly by the symmetric kernel") {
  const MetricField base = affine_plane_metric();
  const MetricField smooth = mollify_metric(base, 0.15, 3);
  for (const Vec& p : {point({0.0, 0.0}), point({0.4, -0.3}), point({-0.6, 0.5})}) {
    const Mat a = base.g(p);
    const Mat b = smooth.g(p);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) CHECK(std::abs(a(i, j) - b(i, j)) < 1e-10);
    Jet1 ja, jb;
    REQUIRE(base.jet1_at(p, ja));
    REQUIRE(smooth.jet1_at(p, jb));
    for (int k = 0; k < 2; ++k)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          CHECK(std::abs(ja.dg[static_cast<std::size_t>(k)](i, j) -
                         jb.dg[static_cast<std::size_t>(k)](i, j)) < 1e-10);
  }
}

TEST_CASE("smoothing error quarters when the width halves") {
  const GeomDocument doc = builtin_fixture("rw_c11_strict");
  double prev = 0.0;
  bool have_prev = false;
  for (double w : {0.2, 0.1, 0.05}) {
    const MetricField smooth = mollify_metric(doc.metric, w, 3);
    const double d = metric_distance_dh(smooth, doc.metric, 6).sup;
    if (have_prev) {
      const double ratio = prev / d;
      CHECK(ratio > 3.0);
      CHECK(ratio < 5.5);
    }
    prev = d;
    have_prev = true;
  }
}

TEST_CASE("metric distance is zero on identity and exact on diagonal shifts") {
  const GeomDocument doc = builtin_fixture("minkowski2");
  CHECK(metric_distance_dh(doc.metric, doc.metric, 5).sup == 0.0);

  MetricField shifted = doc.metric;
  shifted.comp = std::make_shared<ConstDiagField>(2, std::vector<double>{-1.3, 1.0});
  const double fwd = metric_distance_dh(doc.metric, shifted, 5).sup;
  const double bwd = metric_distance_dh(shifted, doc.metric, 5).sup;
  CHECK(std::abs(fwd - 0.3) < 1e-12);
  CHECK(fwd == bwd);
}

TEST_CASE("calibration halves the width until the distance target is met") {
  const GeomDocument doc = builtin_fixture("rw_c11_strict");
  const CalibratedMollification cal =
      calibrate_mollification(doc.metric, 0.02, 0.2, 3, 6);
  CHECK(cal.converged);
  CHECK(cal.dh < 0.02);
  CHECK(cal.halvings >= 1);
  CHECK(cal.width < 0.2);
  const double check = metric_distance_dh(cal.field, doc.metric, 6).sup;
  CHECK(std::abs(check - cal.dh) < 1e-12);
}

TEST_CASE("second jets of the smoothed field respect the base bound") {
  const GeomDocument doc = builtin_fixture("rw_c11_strict");
  const double base_sup = second_jet_sup(doc.metric, 10);
  REQUIRE(base_sup > 0.0);
  for (double w : {0.2, 0.1, 0.05}) {
    const MetricField smooth = mollify_metric(doc.metric, w, 3);
    const double s = second_jet_sup(smooth, 8);
    CHECK(s <= base_sup * (1.0 + 1e-9));
    CHECK(s > 0.1 * base_sup);
  }
}

TEST_CASE("widened cones nest strictly inside the original cones") {
  const GeomDocument doc = builtin_fixture("minkowski3");
  const MetricField inner = inner_approximation(doc.metric, 0.1);
  const ConeCheckReport rep = cone_nesting_check(doc.metric, inner, 100000, 20240817);
  CHECK(rep.samples >= 100000);
  CHECK(rep.violations == 0);
  CHECK(rep.worst < 0.0);
}

TEST_CASE("zero widening degenerates to the boundary case and is reported") {
  const GeomDocument doc = builtin_fixture("minkowski3");
  const MetricField inner = inner_approximation(doc.metric, 0.0);
  const ConeCheckReport rep = cone_nesting_check(doc.metric, inner, 2000, 20240817);
  // null vectors of the same metric sit on the cone boundary, where rounding
  // scatters g(X,X) to either side of zero: the check must fail on a large
  // share of samples and the worst excess must be numerically zero
  CHECK(rep.violations > rep.samples / 2);
  CHECK(std::abs(rep.worst) < 1e-9);
}

TEST_CASE("smoothing a smooth family costs a margin that vanishes with the width") {
  const ComparisonModel m = make_model(1.0, 0.0, 3);
  const MetricField mf = model_metric(m, -0.05, 1.45);
  std::vector<double> margins;
  for (double w : {0.1, 0.05, 0.025}) {
    const MetricField smooth = mollify_metric(mf, w, 3);
    BoundCheckConfig cfg;
    cfg.kappa = 1.0 - 0.05;
    cfg.grid_per_axis = 3;
    cfg.directions = 16;
    cfg.boosts = 4;
    cfg.h_cap = 2.0;
    const BoundReport rep = check_ricci_bound(smooth, cfg);
    CHECK(rep.evaluated > 0);
    margins.push_back(rep.min_margin);
  }
  // the smoothing error in the curvature shrinks like the squared width, so
  // the slack in the relaxed constant absorbs it once the width is small
  CHECK(margins[1] > margins[0]);
  CHECK(margins[2] > margins[1]);
  CHECK(margins[2] >= 0.0);
}
