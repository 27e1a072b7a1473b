#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include <ssprk/tableau.hpp>

// Straightforward reference computations kept separate from the library code paths.
namespace oracle {

using Dense = std::vector<std::vector<double>>;

inline Dense dense(const ssprk::Matrix& m) {
  Dense d(m.rows(), std::vector<double>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) d[i][j] = m(i, j);
  return d;
}

// Gauss-Jordan inverse with partial pivoting.
inline Dense inverse(Dense a) {
  const std::size_t n = a.size();
  Dense inv(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    std::swap(a[c], a[p]);
    std::swap(inv[c], inv[p]);
    const double d = a[c][c];
    for (std::size_t k = 0; k < n; ++k) {
      a[c][k] /= d;
      inv[c][k] /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a[r][c];
      for (std::size_t k = 0; k < n; ++k) {
        a[r][k] -= f * a[c][k];
        inv[r][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

inline Dense extended(const ssprk::ButcherTableau& t) {
  const std::size_t s = t.stages();
  Dense e(s + 1, std::vector<double>(s + 1, 0.0));
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) e[i][j] = t.a()(i, j);
  for (std::size_t j = 0; j < s; ++j) e[s][j] = t.b()[j];
  return e;
}

// Smallest entry of (I + rK)^{-1} e and r (I + rK)^{-1} K.
inline double min_monotonic_entry(const Dense& k, double r) {
  const std::size_t n = k.size();
  Dense m(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = (i == j ? 1.0 : 0.0) + r * k[i][j];
  const Dense inv = inverse(m);
  double lo = 1e300;
  for (std::size_t i = 0; i < n; ++i) {
    double a = 0.0;
    for (std::size_t j = 0; j < n; ++j) a += inv[i][j];
    lo = std::min(lo, a);
    for (std::size_t j = 0; j < n; ++j) {
      double l = 0.0;
      for (std::size_t q = 0; q < n; ++q) l += inv[i][q] * k[q][j];
      lo = std::min(lo, r * l);
    }
  }
  return lo;
}

// Radius by scanning upward in steps of 1e-3 then bisecting.
inline double radius(const ssprk::ButcherTableau& t, double slack = 1e-10) {
  const Dense k = extended(t);
  const double cap = 2.0 * static_cast<double>(t.stages());
  double lo = 0.0, hi = cap;
  for (double r = 1e-3; r <= cap; r += 1e-3) {
    if (min_monotonic_entry(k, r) < -slack) {
      hi = r;
      break;
    }
    lo = r;
  }
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    (min_monotonic_entry(k, mid) >= -slack ? lo : hi) = mid;
  }
  return lo;
}

// Sign-change root of f on [a, b] by bisection.
inline double bisect_root(const std::function<double(double)>& f, double a, double b) {
  double fa = f(a);
  for (int it = 0; it < 200; ++it) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

// b^T A^{k-1} e by repeated matrix-vector products.
inline double stability_coefficient(const ssprk::ButcherTableau& t, int k) {
  if (k == 0) return 1.0;
  const std::size_t s = t.stages();
  std::vector<double> v(s, 1.0);
  for (int p = 1; p < k; ++p) {
    std::vector<double> w(s, 0.0);
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j) w[i] += t.a()(i, j) * v[j];
    v = w;
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < s; ++i) acc += t.b()[i] * v[i];
  return acc;
}

}  // namespace oracle
