#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <optional>
#include <random>
#include <vector>

#include "ssprk/family53.hpp"
#include "ssprk/lowstorage.hpp"
#include "ssprk/monotonicity.hpp"
#include "ssprk/order_conditions.hpp"

namespace ssprk {

enum class OptimizeVariant { Full, Constrained };

struct OptimizeOptions {
  int seeds = 50;
  double r_tol = 1e-6;
  std::uint64_t rng_seed = 1;
  double r_lo = 1.0;
  double r_hi = 2.7;
  bool parallel = false;
};

struct ConstraintPattern {
  bool u_eq_v = false;
  bool v_eq_w = false;
  bool x_eq_1 = false;
};

struct OptimizeResult {
  TwoNStarParams params;
  double r = 0.0;          // certified radius of absolute monotonicity
  double r_bisection = 0.0;  // largest trial radius found feasible
  ButcherTableau tableau{Matrix(1, 1), {1.0}};
  ShuOsherForm shu_osher{Matrix(2, 2), Matrix(2, 2)};
  std::vector<double> order_residuals;
  double error_constant = 0.0;
  StorageClass storage = StorageClass::General;
  ConstraintPattern pattern;
  int seed_index = -1;
};

namespace detail {

// Unknowns: Full z = (b1..b5, u, v, w, x); Constrained z = (b1 = b2, b3, b4, b5, v = u, x = w).
inline TwoNStarParams expand_2nstar(const std::vector<double>& z, OptimizeVariant variant) {
  TwoNStarParams p;
  if (variant == OptimizeVariant::Full) {
    p.b = {z[0], z[1], z[2], z[3], z[4]};
    p.u = z[5];
    p.v = z[6];
    p.w = z[7];
    p.x = z[8];
  } else {
    p.b = {z[0], z[0], z[1], z[2], z[3]};
    p.u = p.v = z[4];
    p.w = p.x = z[5];
  }
  return p;
}

/// Order conditions as equalities plus hinge terms for b >= 0,
/// u >= v >= w >= x >= 1 and representation coefficient >= r.
inline std::vector<double> penalty_residuals(const std::vector<double>& z, double r, OptimizeVariant variant) {
  const auto p = expand_2nstar(z, variant);
  const std::array<double, 4> m{p.u, p.v, p.w, p.x};
  std::array<std::array<double, 5>, 5> a{};
  for (std::size_t i = 1; i < 5; ++i)
    for (std::size_t j = 0; j < i; ++j) a[i][j] = m[i - 1] * p.b[j];
  std::array<double, 5> c{}, ac{};
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < i; ++j) c[i] += a[i][j];
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < i; ++j) ac[i] += a[i][j] * c[j];
  double s0 = 0, s1 = 0, s2 = 0, s3 = 0;
  for (std::size_t i = 0; i < 5; ++i) {
    s0 += p.b[i];
    s1 += p.b[i] * c[i];
    s2 += p.b[i] * c[i] * c[i];
    s3 += p.b[i] * ac[i];
  }
  auto hinge = [](double v) { return std::max(0.0, v); };
  std::vector<double> f{s0 - 1.0, s1 - 0.5, s2 - 1.0 / 3.0, s3 - 1.0 / 6.0};
  for (double bi : p.b) f.push_back(hinge(-bi));
  f.push_back(hinge(p.v - p.u));
  f.push_back(hinge(p.w - p.v));
  f.push_back(hinge(p.x - p.w));
  f.push_back(hinge(1.0 - p.x));
  f.push_back(hinge(r * p.u * p.b[0] - 1.0));
  f.push_back(hinge(r * p.u * p.b[1] - 1.0));
  f.push_back(hinge(r * p.v * p.b[2] - 1.0));
  f.push_back(hinge(r * p.w * p.b[3] - 1.0));
  f.push_back(hinge(r * p.x * p.b[4] - 1.0));
  return f;
}

inline double sum_squares(const std::vector<double>& f) {
  double s = 0.0;
  for (double v : f) s += v * v;
  return s;
}

/// Damped Gauss-Newton (Levenberg-Marquardt) on the penalty residuals.
/// Returns the final point and its squared residual norm.
inline std::pair<std::vector<double>, double> penalty_solve(std::vector<double> z, double r, OptimizeVariant variant,
                                                            int max_iter = 200) {
  const std::size_t n = z.size();
  double mu = 1e-3;
  auto f = penalty_residuals(z, r, variant);
  double big_f = sum_squares(f);
  for (int it = 0; it < max_iter && big_f >= 1e-26; ++it) {
    const std::size_t m = f.size();
    Matrix j(m, n);
    for (std::size_t k = 0; k < n; ++k) {
      auto zp = z, zm = z;
      zp[k] += 1e-7;
      zm[k] -= 1e-7;
      const auto fp = penalty_residuals(zp, r, variant);
      const auto fm = penalty_residuals(zm, r, variant);
      for (std::size_t i = 0; i < m; ++i) j(i, k) = (fp[i] - fm[i]) / 2e-7;
    }
    Matrix jtj(n, n);
    std::vector<double> jtf(n, 0.0);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t i = 0; i < m; ++i) jtf[a] -= j(i, a) * f[i];
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t i = 0; i < m; ++i) jtj(a, b) += j(i, a) * j(i, b);
    }
    while (true) {
      Matrix lhs = jtj;
      for (std::size_t a = 0; a < n; ++a) lhs(a, a) += mu;
      std::vector<double> dz;
      try {
        dz = solve_dense(lhs, jtf);
      } catch (const Error&) {
        return {z, big_f};
      }
      auto zn = z;
      for (std::size_t a = 0; a < n; ++a) zn[a] += dz[a];
      auto fn = penalty_residuals(zn, r, variant);
      const double big_fn = sum_squares(fn);
      if (big_fn < big_f) {
        z = std::move(zn);
        f = std::move(fn);
        big_f = big_fn;
        mu = std::max(mu / 3.0, 1e-12);
        break;
      }
      mu *= 4.0;
      if (mu > 1e8) return {z, big_f};
    }
  }
  return {z, big_f};
}

inline std::vector<double> random_start(OptimizeVariant variant, std::uint64_t rng_seed, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(rng_seed), static_cast<std::uint32_t>(rng_seed >> 32),
                    static_cast<std::uint32_t>(index)};
  std::mt19937_64 gen(seq);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> mult(1.0, 4.0);
  std::array<double, 5> b{};
  double sum = 0.0;
  for (double& bi : b) sum += (bi = unit(gen));
  for (double& bi : b) bi /= sum;
  std::array<double, 4> uvwx{};
  for (double& v : uvwx) v = mult(gen);
  std::sort(uvwx.begin(), uvwx.end(), std::greater<>());
  if (variant == OptimizeVariant::Full) return {b[0], b[1], b[2], b[3], b[4], uvwx[0], uvwx[1], uvwx[2], uvwx[3]};
  return {b[0], b[2], b[3], b[4], uvwx[0], uvwx[2]};
}

constexpr double kPenaltyAccept = 1e-24;

/// Runs every start at trial radius r; returns the solved points that are feasible.
inline std::vector<std::pair<int, std::vector<double>>> solve_starts(double r, OptimizeVariant variant,
                                                                     const OptimizeOptions& opt, bool stop_at_first) {
  std::vector<std::pair<int, std::vector<double>>> found;
  if (opt.parallel) {
    std::vector<std::future<std::pair<std::vector<double>, double>>> jobs;
    for (int k = 0; k < opt.seeds; ++k)
      jobs.push_back(std::async(std::launch::async, [=] {
        return penalty_solve(random_start(variant, opt.rng_seed, k), r, variant);
      }));
    for (int k = 0; k < opt.seeds; ++k) {
      auto [z, big_f] = jobs[static_cast<std::size_t>(k)].get();
      if (big_f < kPenaltyAccept) found.emplace_back(k, std::move(z));
    }
    if (stop_at_first && found.size() > 1) found.resize(1);
    return found;
  }
  for (int k = 0; k < opt.seeds; ++k) {
    auto [z, big_f] = penalty_solve(random_start(variant, opt.rng_seed, k), r, variant);
    if (big_f < kPenaltyAccept) {
      found.emplace_back(k, std::move(z));
      if (stop_at_first) break;
    }
  }
  return found;
}

inline std::optional<OptimizeResult> certify_candidate(const std::vector<double>& z, OptimizeVariant variant) {
  OptimizeResult res;
  res.params = expand_2nstar(z, variant);
  try {
    res.tableau = build_2nstar_tableau(res.params);
    res.shu_osher = two_nstar_shu_osher(res.params);
    res.r = radius_absolute_monotonicity(res.tableau);
  } catch (const Error&) {
    return std::nullopt;
  }
  res.order_residuals = order_residuals(res.tableau, 3);
  if (max_abs(res.order_residuals) > 1e-9) return std::nullopt;
  res.error_constant = error_constant(res.tableau, 1e-9);
  res.storage = classify(res.shu_osher, 1e-12);
  const double tol = 1e-5;
  res.pattern.u_eq_v = std::abs(res.params.u - res.params.v) <= tol;
  res.pattern.v_eq_w = std::abs(res.params.v - res.params.w) <= tol;
  res.pattern.x_eq_1 = std::abs(res.params.x - 1.0) <= tol;
  return res;
}

}  // namespace detail

/// Maximizes the SSP coefficient over 2N* schemes by bisection on r with a
/// multi-start penalized feasibility solve at each trial radius.
inline OptimizeResult optimize_2nstar(OptimizeVariant variant, const OptimizeOptions& opt = {}) {
  if (opt.seeds < 1) throw Error(ErrorCode::InvalidArgument, "seeds must be >= 1");
  if (!(opt.r_tol > 0.0) || !(opt.r_lo < opt.r_hi)) throw Error(ErrorCode::InvalidRange, "bad bisection bracket");

  if (detail::solve_starts(opt.r_lo, variant, opt, true).empty())
    throw Error(ErrorCode::NoFeasiblePoint, "no feasible 2N* scheme at r = " + std::to_string(opt.r_lo));

  double lo = opt.r_lo;
  double hi = opt.r_hi;
  while (hi - lo > opt.r_tol) {
    const double mid = 0.5 * (lo + hi);
    (detail::solve_starts(mid, variant, opt, true).empty() ? hi : lo) = mid;
  }

  std::optional<OptimizeResult> best;
  for (const auto& [k, z] : detail::solve_starts(lo, variant, opt, false)) {
    auto cand = detail::certify_candidate(z, variant);
    if (!cand) continue;
    cand->seed_index = k;
    if (!best || cand->r > best->r + 1e-12 ||
        (std::abs(cand->r - best->r) <= 1e-12 && cand->error_constant < best->error_constant))
      best = std::move(cand);
  }
  if (!best) throw Error(ErrorCode::NoFeasiblePoint, "no certified scheme at r = " + std::to_string(lo));
  best->r_bisection = lo;
  return *best;
}

}  // namespace ssprk
