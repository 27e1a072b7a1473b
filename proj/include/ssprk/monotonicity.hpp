#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "ssprk/tableau.hpp"

namespace ssprk {

/// Result of testing (I + r A)^{-1} e >= 0 and r (I + r A)^{-1} A >= 0.
struct FeasibilityReport {
  double r = 0.0;
  bool feasible = false;
  std::vector<double> alpha_r;
  Matrix lambda_r;
  double min_entry = 0.0;
};

inline FeasibilityReport monotonicity_feasible(const ExtendedMatrix& m, double r, double tol = 1e-10) {
  if (!(r >= 0.0) || !(tol >= 0.0)) throw Error(ErrorCode::InvalidArgument, "r and tol must be nonnegative");
  const std::size_t n = m.dim();
  Matrix k = Matrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) k(i, j) = r * m.m(i, j);

  FeasibilityReport rep;
  rep.r = r;
  rep.alpha_r = forward_substitute(k, std::vector<double>(n, 1.0));
  rep.lambda_r = forward_substitute(k, m.m);
  rep.lambda_r *= r;

  double lo = std::numeric_limits<double>::infinity();
  for (double a : rep.alpha_r) lo = std::min(lo, a);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) lo = std::min(lo, rep.lambda_r(i, j));
  rep.min_entry = lo;
  rep.feasible = lo >= -tol;
  return rep;
}

struct RadiusResult {
  double radius = 0.0;
  bool saturated = false;  // feasible at the upper bracket r_max
};

/// Radius of absolute monotonicity (SSP coefficient) by bisection on [0, r_max].
/// r_max <= 0 selects the default bracket 2s.
inline RadiusResult radius_absolute_monotonicity(const ExtendedMatrix& m, double r_max = 0.0,
                                                 double bis_tol = 1e-12, double slack = 1e-10) {
  if (!(bis_tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "bisection tolerance must be positive");
  if (r_max <= 0.0) r_max = 2.0 * static_cast<double>(m.stages());

  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (m.m(i, j) < -1e-13)
        throw Error(ErrorCode::NotAbsolutelyMonotonic,
                    "negative coefficient at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
  if (!monotonicity_feasible(m, bis_tol, slack).feasible)
    throw Error(ErrorCode::NotAbsolutelyMonotonic, "infeasible at r = 0+");

  if (monotonicity_feasible(m, r_max, slack).feasible) return {r_max, true};

  double lo = 0.0;
  double hi = r_max;
  while (hi - lo > bis_tol) {
    const double mid = 0.5 * (lo + hi);
    (monotonicity_feasible(m, mid, slack).feasible ? lo : hi) = mid;
  }
  if (lo > 1e-9 && !monotonicity_feasible(m, lo - 1e-9, slack).feasible)
    throw Error(ErrorCode::NotAbsolutelyMonotonic, "feasible set is not an interval near the computed radius");

  // Refine with a round-off-level slack so R is not inflated by slack / |d min_entry / dr|.
  constexpr double fine = 1e-13;
  const double start = std::max(0.0, lo - 1e-6 * std::max(1.0, lo));
  if (slack > fine && monotonicity_feasible(m, start, fine).feasible && !monotonicity_feasible(m, lo, fine).feasible) {
    double a = start;
    double b = lo;
    while (b - a > bis_tol) {
      const double mid = 0.5 * (a + b);
      (monotonicity_feasible(m, mid, fine).feasible ? a : b) = mid;
    }
    lo = a;
  }
  return {lo, false};
}

inline double radius_absolute_monotonicity(const ButcherTableau& t) {
  return radius_absolute_monotonicity(extended_matrix(t)).radius;
}

/// min lambda_ij / gamma_ij over the nonzero entries of Gamma (+inf if Gamma = 0).
inline double representation_ssp_coefficient(const ShuOsherForm& f, double zero_tol = 1e-13) {
  if (f.lambda().min_entry() < -zero_tol || f.gamma().min_entry() < -zero_tol)
    throw Error(ErrorCode::NegativeCoefficients, "Shu-Osher form has negative entries");
  double r = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < f.dim(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      const double g = f.gamma(i, j);
      if (g > zero_tol) r = std::min(r, std::max(0.0, f.lambda(i, j)) / g);
    }
  return r;
}

namespace detail {

/// (Lambda_r, Lambda_r / r) with alpha_r folded into column 1. No sign checks:
/// the construction is algebraic and is also used off the feasible set.
inline ShuOsherForm folded_optimal_representation(const ExtendedMatrix& m, double r) {
  if (!(r > 0.0)) throw Error(ErrorCode::InvalidArgument, "radius must be positive");
  const auto rep = monotonicity_feasible(m, r, 0.0);
  Matrix lambda = rep.lambda_r;
  Matrix gamma = rep.lambda_r;
  gamma *= 1.0 / r;
  for (std::size_t i = 1; i < m.dim(); ++i) lambda(i, 0) += rep.alpha_r[i];
  return ShuOsherForm(std::move(lambda), std::move(gamma));
}

}  // namespace detail

/// Canonical optimal representation at radius r: Gamma_r = Lambda_r / r, then
/// alpha_r moved into the first column of Lambda.
inline ShuOsherForm canonical_optimal_representation(const ExtendedMatrix& m, double r) {
  if (!(r > 0.0)) throw Error(ErrorCode::InvalidRange, "radius must be positive");
  if (!monotonicity_feasible(m, r).feasible)
    throw Error(ErrorCode::InfeasibleRadius, "r = " + std::to_string(r) + " exceeds the radius of absolute monotonicity");
  return detail::folded_optimal_representation(m, r);
}

/// Row operation that leaves the method unchanged: row i gains t times row j
/// (0-based, i > j >= 1), and lambda_ij drops by t.
inline ShuOsherForm invariance_transform(const ShuOsherForm& f, std::size_t i, std::size_t j, double t) {
  if (!(i > j && j >= 1 && i < f.dim()))
    throw Error(ErrorCode::IndexError, "need dim > i > j >= 1 (0-based), got i=" + std::to_string(i) +
                                           " j=" + std::to_string(j));
  Matrix lambda = f.lambda();
  Matrix gamma = f.gamma();
  for (std::size_t k = 0; k < f.dim(); ++k) {
    gamma(i, k) += t * f.gamma(j, k);
    if (k != j) lambda(i, k) += t * f.lambda(j, k);
  }
  lambda(i, j) -= t;
  return ShuOsherForm(std::move(lambda), std::move(gamma));
}

/// Eliminates every Gamma entry below the first subdiagonal, column by column,
/// using the subdiagonal pivot gamma_{j+1,j}.
inline ShuOsherForm sparsify_gamma(const ShuOsherForm& f, double zero_tol = 1e-13) {
  if (!f.is_canonical(1e-12)) throw Error(ErrorCode::NotCanonical, "sparsify_gamma needs a canonical form");
  ShuOsherForm out = f;
  const std::size_t n = f.dim();
  for (std::size_t j = 0; j + 2 < n; ++j) {
    for (std::size_t i = j + 2; i < n; ++i) {
      const double target = out.gamma(i, j);
      if (target == 0.0) continue;
      if (std::abs(target) > zero_tol) {
        const double pivot = out.gamma(j + 1, j);
        if (std::abs(pivot) <= zero_tol)
          throw Error(ErrorCode::ZeroPivot,
                      "gamma(" + std::to_string(j + 2) + "," + std::to_string(j + 1) + ") vanishes");
        out = invariance_transform(out, i, j + 1, -target / pivot);
      }
      Matrix lambda = out.lambda();
      Matrix gamma = out.gamma();
      gamma(i, j) = 0.0;
      out = ShuOsherForm(std::move(lambda), std::move(gamma));
    }
  }
  return out;
}

/// Minimum entries of Lambda, Gamma, alpha and Lambda - r Gamma; all four are
/// nonnegative for an optimal representation at r.
struct OptimalityCertificate {
  double r = 0.0;
  double min_lambda = 0.0;
  double min_gamma = 0.0;
  double min_alpha = 0.0;
  double min_lambda_minus_r_gamma = 0.0;

  bool holds(double slack = 1e-12) const {
    return min_lambda >= -slack && min_gamma >= -slack && min_alpha >= -slack &&
           min_lambda_minus_r_gamma >= -slack;
  }
};

inline OptimalityCertificate certify_representation(const ShuOsherForm& f, double r) {
  OptimalityCertificate c;
  c.r = r;
  c.min_lambda = c.min_gamma = c.min_lambda_minus_r_gamma = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < f.dim(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      c.min_lambda = std::min(c.min_lambda, f.lambda(i, j));
      c.min_gamma = std::min(c.min_gamma, f.gamma(i, j));
      c.min_lambda_minus_r_gamma = std::min(c.min_lambda_minus_r_gamma, f.lambda(i, j) - r * f.gamma(i, j));
    }
  const auto a = f.alpha();
  c.min_alpha = *std::min_element(a.begin(), a.end());
  return c;
}

}  // namespace ssprk
