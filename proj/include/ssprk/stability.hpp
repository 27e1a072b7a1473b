#pragma once

#include <cmath>
#include <complex>
#include <ostream>
#include <vector>

#include "ssprk/tableau.hpp"

namespace ssprk {

/// R(z) = sum_k coeffs[k] z^k for the linear test equation y' = z y / h.
struct StabilityPolynomial {
  std::vector<double> coeffs;

  template <typename T>
  T operator()(T z) const {
    T acc{0.0};
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * z + T{coeffs[k]};
    return acc;
  }

  std::size_t degree() const noexcept { return coeffs.empty() ? 0 : coeffs.size() - 1; }
};

inline StabilityPolynomial stability_polynomial(const ButcherTableau& t) {
  const std::size_t s = t.stages();
  StabilityPolynomial sp;
  sp.coeffs.assign(s + 1, 0.0);
  sp.coeffs[0] = 1.0;
  // coeff[k] = b^T A^{k-1} e
  std::vector<double> v(s, 1.0);
  for (std::size_t k = 1; k <= s; ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < s; ++i) acc += t.b()[i] * v[i];
    sp.coeffs[k] = acc;
    v = t.a() * v;
  }
  return sp;
}

/// Left end x* of the largest interval [x*, 0] on which |R(x)| <= 1. Scans with
/// a fixed step, then bisects the first failing cell down to tol.
inline double real_stability_interval(const StabilityPolynomial& sp, double tol = 1e-12,
                                      double scan_step = 1e-3, double scan_limit = 1e4) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
  auto stable = [&](double x) { return std::abs(sp(x)) <= 1.0; };
  double inside = 0.0;
  double outside = 0.0;
  bool found = false;
  for (long k = 1; k * scan_step <= scan_limit; ++k) {
    const double x = -static_cast<double>(k) * scan_step;
    if (!stable(x)) {
      outside = x;
      found = true;
      break;
    }
    inside = x;
  }
  if (!found) return -scan_limit;
  while (inside - outside > tol) {
    const double mid = 0.5 * (inside + outside);
    (stable(mid) ? inside : outside) = mid;
  }
  return inside;
}

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

struct StabilityGrid {
  std::vector<double> re;
  std::vector<double> im;
  std::vector<bool> inside;  // row-major, index j * re.size() + i

  bool at(std::size_t i, std::size_t j) const { return inside[j * re.size() + i]; }
};

inline StabilityGrid stability_region_grid(const StabilityPolynomial& sp, Range re, Range im,
                                           std::size_t nx, std::size_t ny) {
  if (nx < 2 || ny < 2) throw Error(ErrorCode::InvalidRange, "grid needs at least 2 points per axis");
  if (!(re.hi > re.lo) || !(im.hi > im.lo)) throw Error(ErrorCode::InvalidRange, "degenerate range");
  StabilityGrid g;
  for (std::size_t i = 0; i < nx; ++i) g.re.push_back(re.lo + (re.hi - re.lo) * double(i) / double(nx - 1));
  for (std::size_t j = 0; j < ny; ++j) g.im.push_back(im.lo + (im.hi - im.lo) * double(j) / double(ny - 1));
  g.inside.resize(nx * ny);
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < nx; ++i)
      g.inside[j * nx + i] = std::abs(sp(std::complex<double>(g.re[i], g.im[j]))) <= 1.0;
  return g;
}

inline void write_csv(const StabilityGrid& g, std::ostream& os) {
  os << "re,im,inside\n";
  const auto old = os.precision(17);
  for (std::size_t j = 0; j < g.im.size(); ++j)
    for (std::size_t i = 0; i < g.re.size(); ++i)
      os << g.re[i] << ',' << g.im[j] << ',' << (g.at(i, j) ? 1 : 0) << '\n';
  os.precision(old);
}

}  // namespace ssprk
