#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "geomlab/directions.hpp"
#include "geomlab/expr.hpp"
#include "geomlab/mat.hpp"
#include "geomlab/quadrature.hpp"
#include "geomlab/rng.hpp"

using namespace geomlab;

namespace {

Mat rotation_xy(double a, int n) {
  Mat r = Mat::identity(n);
  r(0, 0) = std::cos(a);
  r(0, 1) = -std::sin(a);
  r(1, 0) = std::sin(a);
  r(1, 1) = std::cos(a);
  return r;
}

Mat conjugate(const Mat& r, const Mat& d) {
  const int n = d.n;
  Mat out = Mat::zero(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) s += r(i, k) * d(k, l) * r(j, l);
      out(i, j) = s;
    }
  return out;
}

}  // namespace

TEST_CASE("determinant and inverse on a known 3x3 matrix") {
  Mat m = Mat::zero(3);
  m(0, 0) = 2.0; m(0, 1) = 1.0; m(0, 2) = 0.0;
  m(1, 0) = 1.0; m(1, 1) = 3.0; m(1, 2) = 1.0;
  m(2, 0) = 0.0; m(2, 1) = 1.0; m(2, 2) = 4.0;
  CHECK(std::abs(det(m) - 18.0) < 1e-12);
  Mat inv = inverse(m);
  Mat prod = Mat::zero(3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += m(i, k) * inv(k, j);
      prod(i, j) = s;
    }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(std::abs(prod(i, j) - (i == j ? 1.0 : 0.0)) < 1e-12);
  CHECK(std::abs(det(m) * det(inv) - 1.0) < 1e-12);
}

TEST_CASE("symmetric eigensolve recovers a rotated spectrum") {
  Mat d = Mat::zero(3);
  d(0, 0) = 5.0;
  d(1, 1) = 2.0;
  d(2, 2) = 1.0;
  Mat r = rotation_xy(0.7, 3);
  Mat a = conjugate(r, d);
  Vec eig = Vec::zero(3);
  Mat q = Mat::zero(3);
  sym_eigen(a, eig, q);
  CHECK(std::abs(eig[0] - 1.0) < 1e-10);
  CHECK(std::abs(eig[1] - 2.0) < 1e-10);
  CHECK(std::abs(eig[2] - 5.0) < 1e-10);
  // columns of q are eigenvectors: a q_k = eig_k q_k
  for (int k = 0; k < 3; ++k) {
    for (int i = 0; i < 3; ++i) {
      double av = 0.0;
      for (int j = 0; j < 3; ++j) av += a(i, j) * q(j, k);
      CHECK(std::abs(av - eig[k] * q(i, k)) < 1e-9);
    }
  }
}

TEST_CASE("spectral norm of a symmetric matrix is the extreme eigenvalue") {
  Mat m = Mat::zero(2);
  m(0, 0) = -3.0;
  m(1, 1) = 2.0;
  CHECK(std::abs(spectral_norm_sym(m) - 3.0) < 1e-12);
}

TEST_CASE("adaptive quadrature hits analytic integrals") {
  const double s = integrate_adaptive([](double x) { return std::sin(x); },
                                      0.0, M_PI, 1e-10);
  CHECK(std::abs(s - 2.0) < 1e-9);
  const double a = integrate_adaptive(
      [](double x) { return 1.0 / (1.0 + x * x); }, 0.0, 1.0, 1e-10);
  CHECK(std::abs(a - M_PI / 4.0) < 1e-9);
}

TEST_CASE("sampled rules integrate polynomials at their exactness order") {
  std::vector<double> sq, lin;
  for (int i = 0; i <= 10; ++i) {
    const double x = i / 10.0;
    sq.push_back(x * x);
    lin.push_back(x);
  }
  CHECK(std::abs(simpson_samples(sq, 0.0, 1.0) - 1.0 / 3.0) < 1e-14);
  CHECK(std::abs(trapezoid_samples(lin, 0.0, 1.0) - 0.5) < 1e-14);
  CHECK(std::abs(trapezoid_samples(sq, 0.0, 1.0) - 1.0 / 3.0) < 2e-3);
}

TEST_CASE("sample streams replay exactly and differ across keys") {
  SampleStream a(123, 7), b(123, 7), c(123, 8);
  for (int k = 0; k < 6; ++k) {
    const double u = a.uniform(k);
    CHECK(u == b.uniform(k));
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  int differing = 0;
  for (int k = 0; k < 6; ++k) {
    SampleStream a2(123, 7);
    if (a2.uniform(k) != c.uniform(k)) ++differing;
  }
  CHECK(differing >= 5);
  SampleStream d(123, 9);
  const double v = d.uniform(0, -2.0, 3.0);
  CHECK(v >= -2.0);
  CHECK(v < 3.0);
  CHECK(splitmix64(42u) == splitmix64(42u));
  CHECK(splitmix64(42u) != splitmix64(43u));
}

TEST_CASE("halton sequence starts with the textbook values") {
  CHECK(std::abs(halton(1, 2) - 0.5) < 1e-15);
  CHECK(std::abs(halton(2, 2) - 0.25) < 1e-15);
  CHECK(std::abs(halton(3, 2) - 0.75) < 1e-15);
  CHECK(std::abs(halton(1, 3) - 1.0 / 3.0) < 1e-15);
  CHECK(std::abs(halton(2, 3) - 2.0 / 3.0) < 1e-15);
}

TEST_CASE("direction sets are unit length and roughly balanced") {
  for (int m : {2, 3, 4}) {
    const auto dirs = unit_directions(m, 64);
    CHECK(static_cast<int>(dirs.size()) >= 64);
    Vec mean = Vec::zero(m);
    for (const Vec& v : dirs) {
      CHECK(std::abs(norm(v) - 1.0) < 1e-12);
      for (int i = 0; i < m; ++i) mean[i] += v[i] / dirs.size();
    }
    CHECK(norm(mean) < 0.15);
  }
}

TEST_CASE("expression parser evaluates, differentiates, and prints") {
  const std::vector<std::string> coords = {"x", "y"};
  ExprPtr e = parse_expr("x^2*sin(y)", coords);
  const double at[2] = {2.0, M_PI / 2.0};
  CHECK(std::abs(e->eval(at) - 4.0) < 1e-12);
  ExprPtr dx = diff_expr(e, 0);
  ExprPtr dy = diff_expr(e, 1);
  CHECK(std::abs(dx->eval(at) - 4.0) < 1e-12);
  CHECK(std::abs(dy->eval(at) - 0.0) < 1e-12);
  // printing round-trips through the parser
  ExprPtr back = parse_expr(to_string(e, coords), coords);
  const double at2[2] = {1.3, 0.4};
  CHECK(std::abs(back->eval(at2) - e->eval(at2)) < 1e-14);
}

TEST_CASE("piecewise expressions switch branches and differentiate per branch") {
  const std::vector<std::string> coords = {"x"};
  ExprPtr e = parse_expr("piecewise(x < 1, x^2, 2*x - 1)", coords);
  const double lo[1] = {0.5}, hi[1] = {2.0};
  CHECK(std::abs(e->eval(lo) - 0.25) < 1e-15);
  CHECK(std::abs(e->eval(hi) - 3.0) < 1e-15);
  ExprPtr d = diff_expr(e, 0);
  CHECK(std::abs(d->eval(lo) - 1.0) < 1e-15);
  CHECK(std::abs(d->eval(hi) - 2.0) < 1e-15);
}
