#pragma once

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "ssprk/catalog.hpp"
#include "ssprk/lowstorage.hpp"
#include "ssprk/monotonicity.hpp"
#include "ssprk/order_conditions.hpp"

namespace ssprk {

struct BLConfig {
  int n = 100;
  double t_end = 0.125;
  double dt_min = 2e-3;
  double dt_max = 1e-2;
  double dt_step = 5e-5;
  double limiter_eps = 1e-12;
  double mu_tol = 1e-12;

  void validate() const {
    if (n < 4) throw Error(ErrorCode::InvalidArgument, "N must be >= 4");
    if (!(dt_min > 0.0 && dt_min < dt_max) || !(dt_step > 0.0) || !(t_end > 0.0))
      throw Error(ErrorCode::InvalidRange, "need 0 < dt_min < dt_max, dt_step > 0, t_end > 0");
  }
};

/// Buckley-Leverett flux u^2 / (u^2 + (1-u)^2/3).
inline double bl_flux(double u) {
  const double w = 1.0 - u;
  return u * u / (u * u + w * w / 3.0);
}

inline double koren_limiter(double theta) {
  return std::max(0.0, std::min({2.0, 2.0 / 3.0 + theta / 3.0, 2.0 * theta}));
}

/// Periodic semi-discretization with Koren-limited face reconstruction.
class BuckleyLeverett {
 public:
  explicit BuckleyLeverett(int n = 100, double limiter_eps = 1e-12)
      : n_(static_cast<std::size_t>(n)), dx_(1.0 / n), eps_(limiter_eps), flux_(static_cast<std::size_t>(n)) {
    if (n < 4) throw Error(ErrorCode::InvalidArgument, "N must be >= 4");
  }

  std::size_t size() const noexcept { return n_; }
  double dx() const noexcept { return dx_; }

  void operator()(std::span<const double> u, std::span<double> out) {
    if (u.size() != n_ || out.size() != n_) throw Error(ErrorCode::DimensionMismatch, "state size must equal N");
    for (std::size_t j = 0; j < n_; ++j) {
      const double um = u[(j + n_ - 1) % n_];
      const double up = u[(j + 1) % n_];
      const double d = up - u[j];
      const double theta = (u[j] - um) / (d + std::copysign(eps_, d));
      flux_[j] = bl_flux(u[j] + 0.5 * koren_limiter(theta) * d);  // flux through face j+1/2
    }
    for (std::size_t j = 0; j < n_; ++j) out[j] = (flux_[(j + n_ - 1) % n_] - flux_[j]) / dx_;
  }

  std::vector<double> operator()(std::span<const double> u) {
    std::vector<double> out(n_);
    (*this)(u, out);
    return out;
  }

 private:
  std::size_t n_;
  double dx_;
  double eps_;
  std::vector<double> flux_;
};

inline std::vector<double> bl_rhs(std::span<const double> u, double limiter_eps = 1e-12) {
  return BuckleyLeverett(static_cast<int>(u.size()), limiter_eps)(u);
}

inline double tv_seminorm(std::span<const double> u) {
  if (u.empty()) throw Error(ErrorCode::InvalidArgument, "empty state");
  double s = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) s += std::abs(u[(j + 1) % u.size()] - u[j]);
  return s;
}

/// 0 for x_j <= 1/2, 1/2 otherwise, with x_j = j/N, j = 1..N.
inline std::vector<double> bl_initial_condition(int n) {
  std::vector<double> u(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) u[static_cast<std::size_t>(j - 1)] = (2 * j <= n) ? 0.0 : 0.5;
  return u;
}

enum class Executor { Auto, Registers, Naive };

/// Low-storage program for a record when its Shu-Osher form fits a template.
inline std::optional<RegisterProgram> register_program(const MethodRecord& rec) {
  if (!rec.shu_osher) return std::nullopt;
  try {
    return compile(*rec.shu_osher);
  } catch (const Error&) {
    return std::nullopt;
  }
}

/// Advances `steps` steps of size dt and calls `observe(state)` after each.
template <VectorField F, typename Observer>
std::vector<double> integrate(const MethodRecord& rec, std::vector<double> y, double dt, long steps, F& rhs,
                              Executor ex, Observer&& observe) {
  std::optional<RegisterProgram> prog;
  if (ex != Executor::Naive) prog = register_program(rec);
  if (ex == Executor::Registers && !prog)
    throw Error(ErrorCode::UnsupportedClass, rec.id + " has no register program");
  for (long k = 0; k < steps; ++k) {
    y = prog ? step_registers(*prog, y, dt, rhs) : step_naive(rec.tableau, y, dt, rhs);
    if (!observe(y)) break;
  }
  return y;
}

/// max_n TV(u_n)/TV(u_{n-1}) over n dt <= t_end; +inf if the state blows up.
inline double mu_ratio(const MethodRecord& rec, double dt, const BLConfig& cfg = {}, Executor ex = Executor::Auto) {
  if (!(dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "dt must be positive");
  BuckleyLeverett rhs(cfg.n, cfg.limiter_eps);
  const long steps = static_cast<long>(std::floor(cfg.t_end / dt + 1e-12));
  auto u = bl_initial_condition(cfg.n);
  double prev = tv_seminorm(u);
  double mu = 0.0;
  integrate(rec, std::move(u), dt, steps, rhs, ex, [&](const std::vector<double>& y) {
    const double tv = tv_seminorm(y);
    if (!std::isfinite(tv)) {
      mu = std::numeric_limits<double>::infinity();
      return false;
    }
    const double ratio = prev > 0.0 ? tv / prev : (tv > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);
    mu = std::max(mu, ratio);
    prev = tv;
    return true;
  });
  return mu;
}

inline std::vector<double> sweep_grid(const BLConfig& cfg) {
  cfg.validate();
  std::vector<double> grid;
  for (long k = 0;; ++k) {
    const double dt = cfg.dt_min + static_cast<double>(k) * cfg.dt_step;
    if (dt > cfg.dt_max * (1.0 + 1e-12)) break;
    grid.push_back(dt);
  }
  if (grid.empty()) throw Error(ErrorCode::EmptyGrid, "sweep grid is empty");
  return grid;
}

struct SweepResult {
  std::vector<std::pair<double, double>> pairs;  // (dt, mu), sorted by dt
  double dt_obs = 0.0;                  // all grid points up to it pass
  double dt_largest_pass = 0.0;         // largest passing grid point
  bool non_monotone_onset = false;      // a pass occurs after a failure
  double dt_fe_obs = 0.0;
  double observed_coeff = 0.0;
};

inline std::vector<std::pair<double, double>> mu_sweep(const MethodRecord& rec, const BLConfig& cfg, bool parallel,
                                                       Executor ex = Executor::Auto) {
  const auto grid = sweep_grid(cfg);
  std::vector<std::pair<double, double>> pairs(grid.size());
  if (!parallel) {
    for (std::size_t k = 0; k < grid.size(); ++k) pairs[k] = {grid[k], mu_ratio(rec, grid[k], cfg, ex)};
    return pairs;
  }
  const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w)
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t k = w; k < grid.size(); k += workers) pairs[k] = {grid[k], mu_ratio(rec, grid[k], cfg, ex)};
    }));
  for (auto& j : jobs) j.get();
  return pairs;
}

inline SweepResult summarize_sweep(std::vector<std::pair<double, double>> pairs, double mu_tol, double dt_fe_obs) {
  if (pairs.empty()) throw Error(ErrorCode::EmptyGrid, "sweep grid is empty");
  SweepResult r;
  r.pairs = std::move(pairs);
  bool failed = false;
  for (const auto& [dt, mu] : r.pairs) {
    const bool pass = mu <= 1.0 + mu_tol;
    if (pass) {
      r.dt_largest_pass = dt;
      if (!failed) r.dt_obs = dt;
      else r.non_monotone_onset = true;
    } else {
      failed = true;
    }
  }
  r.dt_fe_obs = dt_fe_obs;
  r.observed_coeff = dt_fe_obs > 0.0 ? r.dt_obs / dt_fe_obs : 0.0;
  return r;
}

/// Observed forward-Euler threshold from the same sweep grid.
inline double forward_euler_dt_obs(const BLConfig& cfg = {}, bool parallel = false) {
  const auto fe = ssp_first_order(1);
  return summarize_sweep(mu_sweep(fe, cfg, parallel), cfg.mu_tol, 1.0).dt_obs;
}

inline SweepResult observed_ssp_sweep(const MethodRecord& rec, const BLConfig& cfg, double dt_fe_obs,
                                      bool parallel = false) {
  if (!(dt_fe_obs > 0.0)) throw Error(ErrorCode::InvalidArgument, "dt_fe_obs must be positive");
  return summarize_sweep(mu_sweep(rec, cfg, parallel), cfg.mu_tol, dt_fe_obs);
}

struct ConvergenceReport {
  std::vector<double> h;
  std::vector<double> error;
  double slope = 0.0;
};

/// Least-squares slope of log(error) against log(h) on y' = -y, y(0) = 1.
inline ConvergenceReport convergence_order(const MethodRecord& rec, std::vector<double> h_list = {},
                                           double t_end = 1.0) {
  if (h_list.empty()) h_list = {1.0 / 20, 1.0 / 40, 1.0 / 80, 1.0 / 160, 1.0 / 320};
  if (h_list.size() < 3) throw Error(ErrorCode::InvalidArgument, "need at least 3 step sizes");
  auto decay = [](std::span<const double> y, std::span<double> dy) { dy[0] = -y[0]; };
  ConvergenceReport rep;
  for (double h : h_list) {
    const long steps = std::lround(t_end / h);
    const auto y = integrate(rec, {1.0}, t_end / static_cast<double>(steps), steps, decay, Executor::Auto,
                             [](const std::vector<double>&) { return true; });
    rep.h.push_back(h);
    rep.error.push_back(std::abs(y[0] - std::exp(-t_end)));
  }
  const double n = static_cast<double>(h_list.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < rep.h.size(); ++k) {
    const double x = std::log(rep.h[k]), y = std::log(rep.error[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  rep.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return rep;
}

/// Register label as tabulated: 2N*, 3N, >=3N, or naive.
inline std::string storage_label(const MethodRecord& rec) {
  if (!rec.shu_osher) return "naive";
  switch (classify(*rec.shu_osher)) {
    case StorageClass::TwoNStar: return "2N*";
    case StorageClass::ThreeN_A:
    case StorageClass::ThreeN_B: return "3N";
    case StorageClass::General: return ">=3N";
  }
  return "naive";
}

struct Table1Row {
  std::string id;
  std::string name;
  int stages = 0;
  int order = 0;
  double ssp_coefficient = 0.0;
  double observed_coeff = 0.0;
  double error_constant = 0.0;
  std::string storage;
  SweepResult sweep;
};

struct Table1 {
  double dt_fe_obs = 0.0;
  std::vector<Table1Row> rows;
};

inline Table1 table1(const BLConfig& cfg = {}, bool parallel = false) {
  Table1 t;
  t.dt_fe_obs = forward_euler_dt_obs(cfg, parallel);
  for (const auto& id : table1_ids()) {
    const auto rec = catalog_lookup(id);
    Table1Row row;
    row.id = rec.id;
    row.name = rec.name;
    row.stages = rec.stages;
    row.order = rec.order;
    row.ssp_coefficient = radius_absolute_monotonicity(rec.tableau);
    row.error_constant = error_constant(rec.tableau, rec.order_tol);
    row.storage = storage_label(rec);
    row.sweep = observed_ssp_sweep(rec, cfg, t.dt_fe_obs, parallel);
    row.observed_coeff = row.sweep.observed_coeff;
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace ssprk
