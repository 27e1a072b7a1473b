#pragma once

#include <cmath>
#include <concepts>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ssprk/tableau.hpp"

namespace ssprk {

enum class StorageClass { TwoNStar, ThreeN_A, ThreeN_B, General };

inline std::string_view to_string(StorageClass c) {
  switch (c) {
    case StorageClass::TwoNStar: return "TwoNStar";
    case StorageClass::ThreeN_A: return "ThreeN_A";
    case StorageClass::ThreeN_B: return "ThreeN_B";
    case StorageClass::General: return "General";
  }
  return "General";
}

/// Number of length-N state registers the class needs (0 for General).
inline int register_count(StorageClass c) {
  switch (c) {
    case StorageClass::TwoNStar: return 2;
    case StorageClass::ThreeN_A:
    case StorageClass::ThreeN_B: return 3;
    case StorageClass::General: return 0;
  }
  return 0;
}

namespace detail {

// Allowed nonzero columns of Lambda per row (0-based) for the two 3N
// templates; rows 0..5 of a 5-stage form.
inline const std::vector<std::vector<std::size_t>>& three_n_pattern(StorageClass c) {
  static const std::vector<std::vector<std::size_t>> a{{}, {0}, {1}, {0, 2}, {0, 3}, {0, 2, 4}};
  static const std::vector<std::vector<std::size_t>> b{{}, {0}, {1}, {0, 2}, {0, 1, 3}, {0, 1, 4}};
  return c == StorageClass::ThreeN_A ? a : b;
}

inline bool lambda_fits(const ShuOsherForm& f, const std::vector<std::vector<std::size_t>>& allowed,
                        double tol) {
  for (std::size_t i = 0; i < f.dim(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      bool ok = false;
      for (std::size_t k : allowed[i]) ok = ok || k == j;
      if (!ok && std::abs(f.lambda(i, j)) > tol) return false;
    }
  return true;
}

inline bool gamma_subdiagonal(const ShuOsherForm& f, double tol) {
  for (std::size_t i = 0; i < f.dim(); ++i)
    for (std::size_t j = 0; j + 1 < i; ++j)
      if (std::abs(f.gamma(i, j)) > tol) return false;
  return true;
}

}  // namespace detail

/// Most specific register template whose zero pattern the canonical form fits.
inline StorageClass classify(const ShuOsherForm& f, double tol = 1e-12) {
  if (!f.is_canonical(std::max(tol, 1e-13)))
    throw Error(ErrorCode::NotCanonical, "classification needs alpha = (1, 0, ..., 0)");
  if (!detail::gamma_subdiagonal(f, tol)) return StorageClass::General;

  std::vector<std::vector<std::size_t>> two_n(f.dim());
  for (std::size_t i = 1; i < f.dim(); ++i) {
    two_n[i].push_back(0);
    if (i > 1) two_n[i].push_back(i - 1);
  }
  if (detail::lambda_fits(f, two_n, tol)) return StorageClass::TwoNStar;
  if (f.stages() == 5) {
    if (detail::lambda_fits(f, detail::three_n_pattern(StorageClass::ThreeN_A), tol))
      return StorageClass::ThreeN_A;
    if (detail::lambda_fits(f, detail::three_n_pattern(StorageClass::ThreeN_B), tol))
      return StorageClass::ThreeN_B;
  }
  return StorageClass::General;
}

/// Coefficients read by one of the three register templates, in execution order:
///   TwoNStar: g21, then (l_{i+1,1}, g_{i+1,i}) for i = 2..s
///   ThreeN_A: g21, g32, l41, l43, g43, l51, l54, g54, l61, l63, l65, g65
///   ThreeN_B: g21, g32, l41, l43, g43, l51, l52, l54, g54, l61, l62, l65, g65
struct RegisterProgram {
  StorageClass algorithm = StorageClass::General;
  std::vector<double> coefficients;
  std::size_t stages = 0;
};

inline std::size_t template_size(StorageClass c, std::size_t stages) {
  switch (c) {
    case StorageClass::TwoNStar: return 1 + 2 * (stages - 1);
    case StorageClass::ThreeN_A: return 12;
    case StorageClass::ThreeN_B: return 13;
    case StorageClass::General: return 0;
  }
  return 0;
}

inline RegisterProgram compile(const ShuOsherForm& f, double tol = 1e-12) {
  const StorageClass cls = classify(f, tol);
  if (cls == StorageClass::General)
    throw Error(ErrorCode::UnsupportedClass, "form needs more than 3 registers");
  for (std::size_t i = 1; i < f.dim(); ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < i; ++j) sum += f.lambda(i, j);
    if (std::abs(sum - 1.0) > tol) throw Error(ErrorCode::NotCanonical, "row sums of Lambda must be 1");
  }
  auto l = [&](std::size_t i, std::size_t j) { return f.lambda(i - 1, j - 1); };
  auto g = [&](std::size_t i, std::size_t j) { return f.gamma(i - 1, j - 1); };

  RegisterProgram p;
  p.algorithm = cls;
  p.stages = f.stages();
  auto& c = p.coefficients;
  switch (cls) {
    case StorageClass::TwoNStar:
      c.push_back(g(2, 1));
      for (std::size_t i = 2; i <= p.stages; ++i) {
        c.push_back(l(i + 1, 1));
        c.push_back(g(i + 1, i));
      }
      break;
    case StorageClass::ThreeN_A:
      c = {g(2, 1), g(3, 2), l(4, 1), l(4, 3), g(4, 3), l(5, 1), l(5, 4), g(5, 4),
           l(6, 1), l(6, 3), l(6, 5), g(6, 5)};
      break;
    case StorageClass::ThreeN_B:
      c = {g(2, 1), g(3, 2), l(4, 1), l(4, 3), g(4, 3), l(5, 1), l(5, 2), l(5, 4), g(5, 4),
           l(6, 1), l(6, 2), l(6, 5), g(6, 5)};
      break;
    case StorageClass::General: break;
  }
  return p;
}

/// Snapshot of the registers after each register update; q3 is empty for
/// two-register programs.
struct RegisterSnapshot {
  int update = 0;
  std::span<const double> q1;
  std::span<const double> q2;
  std::span<const double> q3;
};

/// Optional hooks for step_registers: live/peak counts of state registers and
/// a callback after every update.
struct StepInstrumentation {
  int live_registers = 0;
  int peak_registers = 0;
  std::function<void(const RegisterSnapshot&)> on_update;
};

template <typename F>
concept VectorField = std::invocable<F&, std::span<const double>, std::span<double>>;

namespace detail {

class TrackedRegister {
 public:
  TrackedRegister(std::span<const double> init, StepInstrumentation* instr)
      : data_(init.begin(), init.end()), instr_(instr) {
    if (instr_) {
      ++instr_->live_registers;
      instr_->peak_registers = std::max(instr_->peak_registers, instr_->live_registers);
    }
  }
  TrackedRegister(const TrackedRegister&) = delete;
  TrackedRegister& operator=(const TrackedRegister&) = delete;
  ~TrackedRegister() { release(); }

  std::span<double> span() { return data_; }
  std::span<const double> span() const { return data_; }
  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  std::vector<double> take() {
    release();
    return std::move(data_);
  }

 private:
  void release() {
    if (instr_) --instr_->live_registers;
    instr_ = nullptr;
  }

  std::vector<double> data_;
  StepInstrumentation* instr_;
};

}  // namespace detail

/// One step with the register template of `p`. q2 holds y_n untouched for the
/// whole step; the returned vector is y_{n+1}.
template <VectorField F>
std::vector<double> step_registers(const RegisterProgram& p, std::span<const double> y, double h, F&& rhs,
                                   StepInstrumentation* instr = nullptr) {
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "step size must be positive");
  if (p.algorithm == StorageClass::General || p.coefficients.size() != template_size(p.algorithm, p.stages))
    throw Error(ErrorCode::UnsupportedClass, "malformed register program");

  const std::size_t n = y.size();
  const auto& k = p.coefficients;
  std::vector<double> dydt(n);
  detail::TrackedRegister q1(y, instr);
  detail::TrackedRegister q2(q1.span(), instr);
  int updates = 0;

  auto notify = [&](const detail::TrackedRegister* q3) {
    ++updates;
    if (instr && instr->on_update)
      instr->on_update({updates, q1.span(), q2.span(),
                        q3 ? q3->span() : std::span<const double>{}});
  };
  auto euler = [&](double g) {
    rhs(std::span<const double>(q1.span()), std::span<double>(dydt));
    for (std::size_t m = 0; m < n; ++m) q1[m] += g * h * dydt[m];
  };

  if (p.algorithm == StorageClass::TwoNStar) {
    euler(k[0]);
    notify(nullptr);
    for (std::size_t i = 2; i <= p.stages; ++i) {
      const double lam = k[2 * (i - 1) - 1];
      const double g = k[2 * (i - 1)];
      rhs(std::span<const double>(q1.span()), std::span<double>(dydt));
      for (std::size_t m = 0; m < n; ++m) q1[m] = lam * q2[m] + (1.0 - lam) * q1[m] + g * h * dydt[m];
      notify(nullptr);
    }
    return q1.take();
  }

  if (p.algorithm == StorageClass::ThreeN_A) {
    euler(k[0]);
    notify(nullptr);
    euler(k[1]);
    detail::TrackedRegister q3(q1.span(), instr);
    notify(&q3);
    // rows 4 and 5: l_{i1} q2 + l_{i,i-1} q1 + g_{i,i-1} h f(q1)
    for (std::size_t row = 0; row < 2; ++row) {
      const double l1 = k[2 + 3 * row], ls = k[3 + 3 * row], g = k[4 + 3 * row];
      rhs(std::span<const double>(q1.span()), std::span<double>(dydt));
      for (std::size_t m = 0; m < n; ++m) q1[m] = l1 * q2[m] + ls * q1[m] + g * h * dydt[m];
      notify(&q3);
    }
    rhs(std::span<const double>(q1.span()), std::span<double>(dydt));
    for (std::size_t m = 0; m < n; ++m) q1[m] = k[8] * q2[m] + k[9] * q3[m] + k[10] * q1[m] + k[11] * h * dydt[m];
    notify(&q3);
    return q1.take();
  }

  // ThreeN_B: q3 keeps the second stage.
  euler(k[0]);
  detail::TrackedRegister q3(q1.span(), instr);
  notify(&q3);
  euler(k[1]);
  notify(&q3);
  rhs(std::span<const double>(q1.span()), std::span<double>(dydt));
  for (std::size_t m = 0; m < n; ++m) q1[m] = k[2] * q2[m] + k[3] * q1[m] + k[4] * h * dydt[m];
  notify(&q3);
  for (std::size_t row = 0; row < 2; ++row) {
    const double l1 = k[5 + 4 * row], l2 = k[6 + 4 * row], ls = k[7 + 4 * row], g = k[8 + 4 * row];
    rhs(std::span<const double>(q1.span()), std::span<double>(dydt));
    for (std::size_t m = 0; m < n; ++m) q1[m] = l1 * q2[m] + l2 * q3[m] + ls * q1[m] + g * h * dydt[m];
    notify(&q3);
  }
  return q1.take();
}

/// Reference step storing every stage derivative.
template <VectorField F>
std::vector<double> step_naive(const ButcherTableau& t, std::span<const double> y, double h, F&& rhs) {
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "step size must be positive");
  const std::size_t s = t.stages();
  const std::size_t n = y.size();
  std::vector<std::vector<double>> k(s, std::vector<double>(n));
  std::vector<double> stage(n);
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t m = 0; m < n; ++m) {
      double acc = 0.0;
      for (std::size_t j = 0; j < i; ++j) acc += t.a()(i, j) * k[j][m];
      stage[m] = y[m] + h * acc;
    }
    rhs(std::span<const double>(stage), std::span<double>(k[i]));
  }
  std::vector<double> out(n);
  for (std::size_t m = 0; m < n; ++m) {
    double acc = 0.0;
    for (std::size_t i = 0; i < s; ++i) acc += t.b()[i] * k[i][m];
    out[m] = y[m] + h * acc;
  }
  return out;
}

}  // namespace ssprk
