#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <utility>

#include "ssprk/matrix.hpp"
#include "ssprk/tableau.hpp"

namespace ssprk {

/// Largest real root of x^3 - 5x^2 + 10x - 10, by Newton from 2.5.
inline double ssp53_optimal_radius(double tol = 1e-14) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
  double x = 2.5;
  for (int it = 0; it < 100; ++it) {
    const double f = ((x - 5.0) * x + 10.0) * x - 10.0;
    const double df = (3.0 * x - 10.0) * x + 10.0;
    const double dx = f / df;
    x -= dx;
    if (std::abs(dx) <= tol * std::max(1.0, std::abs(x))) break;
  }
  return x;
}

struct Family53Params {
  double b1 = 0.0;
  double b2 = 0.0;
  double b4 = 0.0;
  double b5 = 0.0;
  double a51 = 0.0;
  double r = ssp53_optimal_radius();

  double a41() const { return r / (60.0 * b4); }
  double a52() const { return r / (60.0 * b5); }
  double a54() const { return b4 / (b5 * r); }
  double b3() const { return r * r / 60.0; }
};

namespace detail {

inline void check_weights(const Family53Params& p) {
  if (std::abs(p.b4) < 1e-14 || std::abs(p.b5) < 1e-14)
    throw Error(ErrorCode::DegenerateWeights, "b4 and b5 must be nonzero");
}

}  // namespace detail

inline ButcherTableau build_family53(const Family53Params& p) {
  detail::check_weights(p);
  const double ir = 1.0 / p.r;
  Matrix a(5, 5);
  a(1, 0) = ir;
  a(2, 0) = a(2, 1) = ir;
  a(3, 0) = a(3, 1) = a(3, 2) = p.a41();
  a(4, 0) = p.a51;
  a(4, 1) = a(4, 2) = p.a52();
  a(4, 3) = p.a54();
  return ButcherTableau(std::move(a), {p.b1, p.b2, p.b3(), p.b4, p.b5});
}

/// Residuals of the three order conditions that remain on the family
/// (b^T A c = 1/6 holds identically).
inline std::array<double, 3> family53_order_residuals(const Family53Params& p) {
  detail::check_weights(p);
  const double r = p.r;
  const double r2 = r * r;
  const double co1 = p.b1 + p.b2 + p.b4 + p.b5 + r2 / 60.0 - 1.0;
  const double co2 = p.a51 * p.b5 * r + p.b2 + p.b4 + 7.0 * r2 / 60.0 - r / 2.0;
  const double t = p.a51 + p.b4 / (p.b5 * r) + r / (30.0 * p.b5);
  const double co3 = p.b5 * t * t + p.b2 / r2 + r2 / (400.0 * p.b4) - 4.0 / 15.0;
  return {co1, co2, co3};
}

/// lambda_61 of the sparse representation before it is set to zero
/// (one minus the rest of row 6 of Lambda).
inline double family53_lambda61(const Family53Params& p) {
  return 1.0 - p.b1 * p.r - p.b5 * p.r + p.r * p.r * p.b5 * p.a51;
}

/// (-r^3 + 5r^2 - 10r + 10)/10, the value lambda_61 takes once the first two
/// order conditions hold.
inline double family53_lambda61_polynomial(double r) { return (((-r + 5.0) * r - 10.0) * r + 10.0) / 10.0; }

/// Closed-form sparse optimal Shu-Osher form of a family member.
inline ShuOsherForm family53_sparse_representation(const Family53Params& p) {
  detail::check_weights(p);
  const auto res = family53_order_residuals(p);
  if (std::abs(res[0]) > 1e-10 || std::abs(res[1]) > 1e-10)
    throw Error(ErrorCode::OrderViolation, "first two order conditions are not satisfied");
  if (std::abs(family53_lambda61_polynomial(p.r)) > 1e-11)
    throw Error(ErrorCode::OrderViolation, "r is not the optimal SSP(5,3) radius");

  const double r = p.r;
  const double d = p.a51 - r / (60.0 * p.b5);
  Matrix l(6, 6), g(6, 6);
  l(1, 0) = 1.0;
  l(2, 1) = 1.0;
  l(3, 0) = 1.0 - r * r / (60.0 * p.b4);
  l(3, 2) = r * r / (60.0 * p.b4);
  l(4, 0) = 1.0 - p.b4 / p.b5 - r * d;
  l(4, 1) = r * d;
  l(4, 3) = p.b4 / p.b5;
  l(5, 0) = 0.0;
  l(5, 1) = r * (p.b1 - p.b2 - r * p.b5 * d);
  l(5, 2) = r * (p.b2 - r * r / 60.0);
  l(5, 4) = p.b5 * r;
  g(1, 0) = 1.0 / r;
  g(2, 1) = 1.0 / r;
  g(3, 2) = r / (60.0 * p.b4);
  g(4, 3) = p.b4 / (p.b5 * r);
  g(5, 4) = p.b5;
  return ShuOsherForm(std::move(l), std::move(g));
}

/// Parameters with a51 = a52 and b1 = b2, solved from the order conditions.
inline Family53Params ruuth_parameters(double r = ssp53_optimal_radius()) {
  auto make = [r](const std::array<double, 3>& z) {
    Family53Params p;
    p.r = r;
    p.b1 = p.b2 = z[0];
    p.b4 = z[1];
    p.b5 = z[2];
    p.a51 = r / (60.0 * z[2]);
    return p;
  };
  std::array<double, 3> z{0.2, 0.2, 0.3};
  for (int it = 0; it < 50; ++it) {
    const auto f = family53_order_residuals(make(z));
    if (std::max({std::abs(f[0]), std::abs(f[1]), std::abs(f[2])}) < 1e-15) break;
    Matrix j(3, 3);
    for (std::size_t k = 0; k < 3; ++k) {
      auto zp = z, zm = z;
      const double h = 1e-7;
      zp[k] += h;
      zm[k] -= h;
      const auto fp = family53_order_residuals(make(zp));
      const auto fm = family53_order_residuals(make(zm));
      for (std::size_t i = 0; i < 3; ++i) j(i, k) = (fp[i] - fm[i]) / (2.0 * h);
    }
    const auto dz = solve_dense(j, {-f[0], -f[1], -f[2]});
    for (std::size_t k = 0; k < 3; ++k) z[k] += dz[k];
  }
  return make(z);
}

/// Closed-form parameters with b5 = 1/r.
inline Family53Params h_parameters(double r = ssp53_optimal_radius()) {
  Family53Params p;
  p.r = r;
  const double r3 = r * r * r;
  p.b1 = p.a51 = 5.0 * (r * r + 32.0 * r - 38.0) / (12.0 * r * (r3 + 20.0));
  p.b2 = r * r / 60.0;
  p.b4 = r3 * r * r / (20.0 * (r3 + 20.0));
  p.b5 = 1.0 / r;
  return p;
}

/// Witness that no optimal SSP(5,3) method admits a 2N* form: forcing
/// lambda52 = lambda62 = lambda63 = 0 fixes every parameter, and the remaining
/// order condition reduces to p(r) = 3r^4 - 40r^3 + 175r^2 - 330r + 250 = 0.
struct No2NStarCertificate {
  double r = 0.0;
  double p_value = 0.0;
  Family53Params forced;
  std::array<double, 3> residuals{};
  bool contradiction = false;
};

inline double no_2nstar_polynomial(double r) { return (((3.0 * r - 40.0) * r + 175.0) * r - 330.0) * r + 250.0; }

inline No2NStarCertificate certify_no_2nstar_ssp53() {
  No2NStarCertificate c;
  c.r = ssp53_optimal_radius(1e-14);
  const double r = c.r;
  c.p_value = no_2nstar_polynomial(r);
  // lambda63 = 0 and lambda62 = 0 give b1 = b2 = r^2/60; lambda52 = 0 gives a51 = r/(60 b5).
  // The first two order conditions then fix b4 and b5.
  c.forced.r = r;
  c.forced.b1 = c.forced.b2 = r * r / 60.0;
  c.forced.b4 = r / 20.0 * (10.0 - 3.0 * r);
  c.forced.b5 = (r * r - 5.0 * r + 10.0) / 10.0;
  c.forced.a51 = r / (60.0 * c.forced.b5);
  c.residuals = family53_order_residuals(c.forced);
  c.contradiction = std::abs(c.p_value) > 1e-3;
  return c;
}

/// Weights b and column multipliers u >= v >= w >= x >= 1 of a 2N* scheme.
struct TwoNStarParams {
  std::array<double, 5> b{};
  double u = 1.0;
  double v = 1.0;
  double w = 1.0;
  double x = 1.0;
};

namespace detail {

inline void check_2nstar(const TwoNStarParams& p, double tol = 1e-12) {
  if (!(p.u >= p.v - tol && p.v >= p.w - tol && p.w >= p.x - tol && p.x >= 1.0 - tol))
    throw Error(ErrorCode::MonotonicityViolation, "need u >= v >= w >= x >= 1");
  for (double bi : p.b)
    if (bi < -tol) throw Error(ErrorCode::MonotonicityViolation, "weights must be nonnegative");
}

}  // namespace detail

inline ButcherTableau build_2nstar_tableau(const TwoNStarParams& p) {
  detail::check_2nstar(p);
  const std::array<double, 4> m{p.u, p.v, p.w, p.x};
  Matrix a(5, 5);
  for (std::size_t i = 1; i < 5; ++i)
    for (std::size_t j = 0; j < i; ++j) a(i, j) = m[i - 1] * p.b[j];
  return ButcherTableau(std::move(a), {p.b.begin(), p.b.end()});
}

inline ShuOsherForm two_nstar_shu_osher(const TwoNStarParams& p) {
  detail::check_2nstar(p);
  const std::array<double, 5> m{p.u, p.v, p.w, p.x, 1.0};
  Matrix l(6, 6), g(6, 6);
  l(1, 0) = 1.0;
  g(1, 0) = p.u * p.b[0];
  for (std::size_t i = 2; i <= 5; ++i) {
    l(i, 0) = (m[i - 2] - m[i - 1]) / m[i - 2];
    l(i, i - 1) = m[i - 1] / m[i - 2];
    g(i, i - 1) = m[i - 1] * p.b[i - 1];
  }
  return ShuOsherForm(std::move(l), std::move(g));
}

/// min lambda/gamma of the 2N* representation.
inline double two_nstar_representation_coefficient(const TwoNStarParams& p) {
  const std::array<double, 5> d{p.u * p.b[0], p.u * p.b[1], p.v * p.b[2], p.w * p.b[3], p.x * p.b[4]};
  double r = std::numeric_limits<double>::infinity();
  for (double v : d)
    if (v > 0.0) r = std::min(r, 1.0 / v);
  return r;
}

}  // namespace ssprk
