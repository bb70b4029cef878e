#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "geomlab/models.hpp"

using namespace geomlab;

namespace {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i)
    out.push_back(a + (b - a) * i / (n - 1));
  return out;
}

}  // namespace

TEST_CASE("parameter pairs land on their classification row") {
  struct Case {
    double kappa, beta;
    int row;
    bool collapses;
  };
  // representatives at n = 3, where the edge value |beta| = (n-1)sqrt(|kappa|) is 2
  const Case cases[] = {
      {-1.0, 1.0, 1, false},  {-1.0, 2.0, 2, false}, {-1.0, 3.0, 3, false},
      {-1.0, -3.0, 4, true},  {0.0, 0.0, 5, false},  {0.0, 1.0, 6, false},
      {0.0, -1.0, 7, true},   {1.0, 1.0, 8, true},   {1.0, 0.0, 9, true},
  };
  for (const Case& c : cases) {
    const ComparisonModel m = make_model(c.kappa, c.beta, 3);
    CHECK(m.row == c.row);
    CHECK(m.collapses() == c.collapses);
    CHECK(!row_name(m.row).empty());
  }
}

TEST_CASE("flagship warps match their closed forms") {
  const ComparisonModel flat = make_model(0.0, 0.0, 3);
  CHECK(flat.f.value(0.0) == 1.0);
  CHECK(flat.f.value(2.3) == 1.0);
  CHECK(!flat.collapses());

  const ComparisonModel cosm = make_model(1.0, 0.0, 3);
  CHECK(std::abs(cosm.f.value(0.7) - std::cos(0.7)) < 1e-12);
  CHECK(std::abs(cosm.collapse - M_PI / 2.0) < 1e-12);

  const ComparisonModel lin = make_model(0.0, -1.0, 2);
  CHECK(std::abs(lin.b + 1.0) < 1e-12);
  CHECK(std::abs(lin.f.value(0.3) - (0.3 - 1.0)) < 1e-12);
  CHECK(std::abs(lin.collapse - 1.0) < 1e-12);
}

TEST_CASE("mean curvature of the zero slice equals beta in every row") {
  // H = (n-1) f'(0)/f(0) is the defining normalization of the warp
  const double pairs[][2] = {{-1.0, 1.0}, {-1.0, 2.0},  {-1.0, 3.0},
                             {-1.0, -3.0}, {0.0, 0.0},  {0.0, 1.0},
                             {0.0, -1.0},  {1.0, 1.0},  {1.0, 0.0}};
  for (const auto& p : pairs) {
    const ComparisonModel m = make_model(p[0], p[1], 3);
    const double h = (m.n - 1) * m.f.d1(0.0) / m.f.value(0.0);
    CHECK(std::abs(h - p[1]) < 1e-12);
  }
}

TEST_CASE("extended warp vanishes past collapse and stays continuous") {
  const ComparisonModel m = make_model(0.0, -1.0, 2);
  CHECK(std::abs(f_tilde(m, 0.0) + 1.0) < 1e-12);
  CHECK(f_tilde(m, 2.0) == 0.0);
  double prev = 1.0;
  for (int k = 2; k <= 6; ++k) {
    const double v = std::abs(f_tilde(m, 1.0 - std::pow(10.0, -k)));
    CHECK(v < prev);
    prev = v;
  }
  CHECK(f_tilde(m, 1.0 + 1e-12) == 0.0);

  const ComparisonModel flat = make_model(0.0, 0.0, 4);
  CHECK(f_tilde(flat, 17.0) == 1.0);
}

TEST_CASE("area ratio is one at the slice and zero past collapse") {
  for (const auto& p : {std::pair{0.0, -1.0}, std::pair{1.0, 0.0},
                        std::pair{-1.0, 1.0}}) {
    const ComparisonModel m = make_model(p.first, p.second, 2);
    CHECK(std::abs(area_ratio(m, 0.0) - 1.0) < 1e-12);
  }
  const ComparisonModel m = make_model(0.0, -1.0, 2);
  CHECK(std::abs(area_ratio(m, 0.5) - 0.5) < 1e-12);
  CHECK(area_ratio(m, 1.5) == 0.0);
}

TEST_CASE("normalized ball volume matches closed forms and saturates") {
  const ComparisonModel flat = make_model(0.0, 0.0, 3);
  CHECK(std::abs(ball_volume_normalized(flat, 0.8) - 0.8) < 1e-12);

  const ComparisonModel lin = make_model(0.0, -1.0, 2);
  CHECK(std::abs(ball_volume_normalized(lin, 1.0) - 0.5) < 1e-9);
  CHECK(std::abs(ball_volume_normalized(lin, 3.0) - 0.5) < 1e-9);

  const ComparisonModel cosm = make_model(1.0, 0.0, 3);
  CHECK(std::abs(ball_volume_normalized(cosm, M_PI / 2.0) - M_PI / 4.0) < 1e-8);
  CHECK(std::abs(ball_volume_normalized(cosm, 2.0) - M_PI / 4.0) < 1e-8);
}

TEST_CASE("sn solves its oscillator equation") {
  CHECK(sn_kappa(0.0, 1.7) == 1.7);
  CHECK(sn_kappa(1.0, 0.0) == 0.0);
  const double h = 1e-3;
  for (double kappa : {-1.0, 0.0, 1.0}) {
    for (double s : linspace(h, 3.0, 25)) {
      const double dd = (sn_kappa(kappa, s + h) - 2.0 * sn_kappa(kappa, s) +
                         sn_kappa(kappa, s - h)) /
                        (h * h);
      CHECK(std::abs(dd + kappa * sn_kappa(kappa, s)) < 1e-6);
    }
  }
}

TEST_CASE("positively curved warps stay below the curvature amplitude") {
  for (const auto& p : {std::pair{1.0, 1.0}, std::pair{1.0, 0.0}}) {
    const ComparisonModel m = make_model(p.first, p.second, 3);
    for (double t : linspace(0.0, m.collapse + 1.0, 40))
      CHECK(std::abs(f_tilde(m, t)) <= 1.0 + 1e-12);
  }
}

TEST_CASE("riemannian ball volumes match closed forms") {
  CHECK(std::abs(riemannian_model_volume(0.0, 2, 0.7) - M_PI * 0.49) < 1e-8);
  const double cap = 2.0 * M_PI * (1.0 - std::cos(1.0));
  CHECK(std::abs(riemannian_model_volume(1.0, 2, 1.0) - cap) < 1e-8);
  // past the sphere diameter the ball is the whole space
  CHECK(std::abs(riemannian_model_volume(1.0, 2, M_PI) - 4.0 * M_PI) < 1e-8);
  CHECK(std::abs(riemannian_model_volume(1.0, 2, 4.0) - 4.0 * M_PI) < 1e-8);
  CHECK(std::abs(unit_sphere_area(3) - 4.0 * M_PI) < 1e-12);
  CHECK(std::abs(unit_sphere_area(2) - 2.0 * M_PI) < 1e-12);
}

TEST_CASE("degenerating parameter families flatten out monotonically") {
  const std::vector<double> grid = linspace(0.0, 3.0, 61);
  for (LimitCase which : {LimitCase::c1, LimitCase::c2, LimitCase::c3,
                          LimitCase::c4}) {
    const LimitReport rep = limit_family_check(which, 3, grid);
    CHECK(rep.steps.size() == 3);
    CHECK(rep.raw_monotone_decreasing);
    CHECK(rep.verdict);
  }
}

TEST_CASE("exceptional family needs renormalization to converge") {
  const std::vector<double> grid = linspace(0.0, 3.0, 61);
  const LimitReport rep = limit_family_check(LimitCase::exceptional, 3, grid);
  for (const LimitStep& st : rep.steps) CHECK(st.raw_sup >= 0.1);
  CHECK(rep.normalized_monotone_decreasing);
  CHECK(rep.verdict);
}
