// Small dense vectors and symmetric-matrix helpers for chart dimensions up to
// kMaxDim.  Hand-rolled on purpose: everything here is 2x2..4x4 work on the
// hot path of curvature and geodesic evaluation.
#pragma once

#include <array>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace geomlab {

inline constexpr int kMaxDim = 8;

struct Vec {
  int n = 0;
  std::array<double, kMaxDim> a{};

  double& operator[](int i) { return a[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return a[static_cast<std::size_t>(i)]; }

  static Vec zero(int n) {
    Vec v;
    v.n = n;
    return v;
  }
};

struct Mat {
  int n = 0;
  std::array<double, kMaxDim * kMaxDim> a{};

  double& operator()(int i, int j) { return a[static_cast<std::size_t>(i * kMaxDim + j)]; }
  double operator()(int i, int j) const { return a[static_cast<std::size_t>(i * kMaxDim + j)]; }

  static Mat zero(int n) {
    Mat m;
    m.n = n;
    return m;
  }
  static Mat identity(int n) {
    Mat m = zero(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }
};

inline Vec operator+(const Vec& x, const Vec& y) {
  Vec r = Vec::zero(x.n);
  for (int i = 0; i < x.n; ++i) r[i] = x[i] + y[i];
  return r;
}

inline Vec operator-(const Vec& x, const Vec& y) {
  Vec r = Vec::zero(x.n);
  for (int i = 0; i < x.n; ++i) r[i] = x[i] - y[i];
  return r;
}

inline Vec operator*(double c, const Vec& x) {
  Vec r = Vec::zero(x.n);
  for (int i = 0; i < x.n; ++i) r[i] = c * x[i];
  return r;
}

inline Mat operator+(const Mat& x, const Mat& y) {
  Mat r = Mat::zero(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j) r(i, j) = x(i, j) + y(i, j);
  return r;
}

inline Mat operator-(const Mat& x, const Mat& y) {
  Mat r = Mat::zero(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j) r(i, j) = x(i, j) - y(i, j);
  return r;
}

inline Mat operator*(double c, const Mat& x) {
  Mat r = Mat::zero(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j) r(i, j) = c * x(i, j);
  return r;
}

inline double dot(const Vec& x, const Vec& y) {
  double s = 0.0;
  for (int i = 0; i < x.n; ++i) s += x[i] * y[i];
  return s;
}

inline double norm(const Vec& x) { return std::sqrt(dot(x, x)); }

inline Vec matvec(const Mat& m, const Vec& x) {
  Vec r = Vec::zero(m.n);
  for (int i = 0; i < m.n; ++i) {
    double s = 0.0;
    for (int j = 0; j < m.n; ++j) s += m(i, j) * x[j];
    r[i] = s;
  }
  return r;
}

// g(X,Y) for a (possibly indefinite) symmetric bilinear form.
inline double bilinear(const Mat& g, const Vec& x, const Vec& y) {
  double s = 0.0;
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) s += g(i, j) * x[i] * y[j];
  return s;
}

// LU determinant with partial pivoting.
inline double det(Mat m) {
  const int n = m.n;
  double d = 1.0;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(m(i, k)) > std::abs(m(piv, k))) piv = i;
    if (m(piv, k) == 0.0) return 0.0;
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
      d = -d;
    }
    d *= m(k, k);
    for (int i = k + 1; i < n; ++i) {
      const double f = m(i, k) / m(k, k);
      for (int j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return d;
}

// Gauss-Jordan inverse with partial pivoting.  Throws on a singular input;
// metric evaluation treats that as a chart-degeneracy error.
inline Mat inverse(Mat m) {
  const int n = m.n;
  Mat inv = Mat::identity(n);
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(m(i, k)) > std::abs(m(piv, k))) piv = i;
    if (std::abs(m(piv, k)) < 1e-300) throw std::runtime_error("inverse: singular matrix");
    if (piv != k)
      for (int j = 0; j < n; ++j) {
        std::swap(m(k, j), m(piv, j));
        std::swap(inv(k, j), inv(piv, j));
      }
    const double p = m(k, k);
    for (int j = 0; j < n; ++j) {
      m(k, j) /= p;
      inv(k, j) /= p;
    }
    for (int i = 0; i < n; ++i) {
      if (i == k) continue;
      const double f = m(i, k);
      if (f == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        m(i, j) -= f * m(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

// Cyclic Jacobi for symmetric matrices.  Eigenvalues land in eig (ascending),
// eigenvectors in the columns of vecs.
inline void sym_eigen(Mat m, Vec& eig, Mat& vecs) {
  const int n = m.n;
  vecs = Mat::identity(n);
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += m(i, j) * m(i, j);
    if (off < 1e-30) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(m(p, q)) < 1e-300) continue;
        const double theta = (m(q, q) - m(p, p)) / (2.0 * m(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double mkp = m(k, p), mkq = m(k, q);
          m(k, p) = c * mkp - s * mkq;
          m(k, q) = s * mkp + c * mkq;
        }
        for (int k = 0; k < n; ++k) {
          const double mpk = m(p, k), mqk = m(q, k);
          m(p, k) = c * mpk - s * mqk;
          m(q, k) = s * mpk + c * mqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = vecs(k, p), vkq = vecs(k, q);
          vecs(k, p) = c * vkp - s * vkq;
          vecs(k, q) = s * vkp + c * vkq;
        }
      }
  }
  eig = Vec::zero(n);
  for (int i = 0; i < n; ++i) eig[i] = m(i, i);
  // ascending order, columns follow
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (eig[j] < eig[i]) {
        std::swap(eig.a[static_cast<std::size_t>(i)], eig.a[static_cast<std::size_t>(j)]);
        for (int k = 0; k < n; ++k) std::swap(vecs(k, i), vecs(k, j));
      }
}

// Largest |eigenvalue| of a symmetric matrix; the exact sup of
// |m(X,Y)|/(|X||Y|) over euclidean-unit X,Y.
inline double spectral_norm_sym(const Mat& m) {
  Vec eig;
  Mat vecs;
  sym_eigen(m, eig, vecs);
  double r = 0.0;
  for (int i = 0; i < m.n; ++i) r = std::max(r, std::abs(eig[i]));
  return r;
}

}  // namespace geomlab
