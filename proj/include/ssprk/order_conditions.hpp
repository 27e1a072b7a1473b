#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "ssprk/tableau.hpp"

namespace ssprk {

namespace detail {

inline double dot(std::span<const double> x, std::span<const double> y) {
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
  return acc;
}

inline std::vector<double> hadamard(std::span<const double> x, std::span<const double> y) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] * y[i];
  return out;
}

}  // namespace detail

/// Residuals b^T Phi(tau) - 1/gamma(tau) for all rooted trees up to order p,
/// in the order [1 | c | c^2, Ac | c^3, c.Ac, Ac^2, A^2 c].
inline std::vector<double> order_residuals(const ButcherTableau& t, int p) {
  if (p < 1 || p > 4) throw Error(ErrorCode::UnsupportedOrder, "order must be in 1..4, got " + std::to_string(p));
  using detail::dot;
  using detail::hadamard;
  const auto b = t.b();
  const auto c = t.c();
  const std::vector<double> e(t.stages(), 1.0);

  std::vector<double> r;
  r.push_back(dot(b, e) - 1.0);
  if (p >= 2) r.push_back(dot(b, c) - 0.5);
  if (p >= 3) {
    const auto c2 = hadamard(c, c);
    const auto ac = t.a() * c;
    r.push_back(dot(b, c2) - 1.0 / 3.0);
    r.push_back(dot(b, ac) - 1.0 / 6.0);
    if (p >= 4) {
      const auto c3 = hadamard(c2, c);
      const auto a_c2 = t.a() * c2;
      const auto a_ac = t.a() * ac;
      r.push_back(dot(b, c3) - 0.25);
      r.push_back(dot(b, hadamard(c, ac)) - 0.125);
      r.push_back(dot(b, a_c2) - 1.0 / 12.0);
      r.push_back(dot(b, a_ac) - 1.0 / 24.0);
    }
  }
  return r;
}

inline double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

/// Order-4 residuals weighted by the inverse tree symmetry, sigma = (6, 1, 2, 1).
inline std::array<double, 4> weighted_order4_residuals(const ButcherTableau& t) {
  constexpr std::array<double, 4> sigma{6.0, 1.0, 2.0, 1.0};
  const auto r = order_residuals(t, 4);
  std::array<double, 4> w{};
  for (std::size_t k = 0; k < 4; ++k) w[k] = r[4 + k] / sigma[k];
  return w;
}

/// 2-norm of the symmetry-weighted order-4 residuals of a third-order method.
inline double error_constant(const ButcherTableau& t, double order_tol = 1e-10) {
  const double worst = max_abs(order_residuals(t, 3));
  if (worst > order_tol)
    throw Error(ErrorCode::NotThirdOrder, "order-3 residual " + std::to_string(worst) + " exceeds tolerance");
  double acc = 0.0;
  for (double x : weighted_order4_residuals(t)) acc += x * x;
  return std::sqrt(acc);
}

}  // namespace ssprk
