#include "geomlab/directions.hpp"

#include <cmath>
#include <stdexcept>

namespace geomlab {

double halton(int index, int base) {
  double f = 1.0, r = 0.0;
  int i = index;
  while (i > 0) {
    f /= base;
    r += f * (i % base);
    i /= base;
  }
  return r;
}

namespace {

Vec unit(Vec v) {
  const double s = norm(v);
  for (int i = 0; i < v.n; ++i) v[i] /= s;
  return v;
}

void append_axes_and_diagonals(int m, std::vector<Vec>& out) {
  for (int i = 0; i < m; ++i)
    for (double s : {1.0, -1.0}) {
      Vec v = Vec::zero(m);
      v[i] = s;
      out.push_back(v);
    }
  if (m < 2) return;
  // all sign patterns of the full diagonal
  const int patterns = 1 << m;
  for (int p = 0; p < patterns; ++p) {
    Vec v = Vec::zero(m);
    for (int i = 0; i < m; ++i) v[i] = (p >> i) & 1 ? -1.0 : 1.0;
    out.push_back(unit(v));
  }
  // two-axis diagonals
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (double si : {1.0, -1.0})
        for (double sj : {1.0, -1.0}) {
          Vec v = Vec::zero(m);
          v[i] = si;
          v[j] = sj;
          out.push_back(unit(v));
        }
}

}  // namespace

std::vector<Vec> unit_directions(int m, int count) {
  if (m < 1) throw std::invalid_argument("unit_directions: m < 1");
  std::vector<Vec> out;
  if (m == 1) {
    Vec a = Vec::zero(1), b = Vec::zero(1);
    a[0] = 1.0;
    b[0] = -1.0;
    out = {a, b};
    return out;
  }
  if (m == 2) {
    // uniform angle grid, multiple of 8 so axes and diagonals are exact
    int k = count < 8 ? 8 : ((count + 7) / 8) * 8;
    for (int j = 0; j < k; ++j) {
      const double th = 2.0 * M_PI * j / k;
      Vec v = Vec::zero(2);
      v[0] = std::cos(th);
      v[1] = std::sin(th);
      out.push_back(v);
    }
    return out;
  }
  append_axes_and_diagonals(m, out);
  if (m == 3) {
    const double golden = M_PI * (3.0 - std::sqrt(5.0));
    const int fill = count > static_cast<int>(out.size())
                         ? count - static_cast<int>(out.size())
                         : 0;
    for (int j = 0; j < fill; ++j) {
      const double z = 1.0 - 2.0 * (j + 0.5) / fill;
      const double r = std::sqrt(1.0 - z * z);
      const double th = golden * j;
      Vec v = Vec::zero(3);
      v[0] = r * std::cos(th);
      v[1] = r * std::sin(th);
      v[2] = z;
      out.push_back(v);
    }
    return out;
  }
  // generic: Halton points through Box-Muller, normalized
  static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19};
  int idx = 1;
  while (static_cast<int>(out.size()) < count) {
    Vec v = Vec::zero(m);
    for (int d = 0; d < m; d += 2) {
      const double u1 = halton(idx, primes[d % 8]);
      const double u2 = halton(idx, primes[(d + 1) % 8]);
      const double r = std::sqrt(-2.0 * std::log(u1 > 1e-12 ? u1 : 1e-12));
      v[d] = r * std::cos(2.0 * M_PI * u2);
      if (d + 1 < m) v[d + 1] = r * std::sin(2.0 * M_PI * u2);
    }
    ++idx;
    if (norm(v) < 1e-8) continue;
    out.push_back(unit(v));
  }
  return out;
}

}  // namespace geomlab
