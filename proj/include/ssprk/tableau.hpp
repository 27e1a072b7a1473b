#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "ssprk/error.hpp"
#include "ssprk/matrix.hpp"

namespace ssprk {

/// Explicit s-stage Runge-Kutta method (A strictly lower triangular, weights
/// b). The abscissae c are always derived from A.
class ButcherTableau {
 public:
  ButcherTableau(Matrix a, std::vector<double> b) : a_(std::move(a)), b_(std::move(b)) {
    if (b_.empty()) throw Error(ErrorCode::InvalidArgument, "tableau needs at least one stage");
    if (!a_.square() || a_.rows() != b_.size())
      throw Error(ErrorCode::DimensionMismatch, "A must be s x s with s = size(b)");
    if (!is_strictly_lower(a_))
      throw Error(ErrorCode::InvalidArgument, "A must be strictly lower triangular");
    c_.assign(b_.size(), 0.0);
    for (std::size_t i = 0; i < b_.size(); ++i)
      for (std::size_t j = 0; j < i; ++j) c_[i] += a_(i, j);
  }

  std::size_t stages() const noexcept { return b_.size(); }
  const Matrix& a() const noexcept { return a_; }
  std::span<const double> b() const noexcept { return b_; }
  std::span<const double> c() const noexcept { return c_; }

 private:
  Matrix a_;
  std::vector<double> b_;
  std::vector<double> c_;
};

/// The (s+1)x(s+1) matrix [[A, 0], [b^T, 0]] acting on the stages plus the
/// step result.
struct ExtendedMatrix {
  Matrix m;

  std::size_t stages() const noexcept { return m.rows() - 1; }
  std::size_t dim() const noexcept { return m.rows(); }
};

inline ExtendedMatrix extended_matrix(const ButcherTableau& t) {
  const std::size_t s = t.stages();
  Matrix m(s + 1, s + 1);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < i; ++j) m(i, j) = t.a()(i, j);
  for (std::size_t j = 0; j < s; ++j) m(s, j) = t.b()[j];
  return {std::move(m)};
}

inline ButcherTableau tableau_from_extended(const ExtendedMatrix& e) {
  const std::size_t s = e.stages();
  Matrix a(s, s);
  std::vector<double> b(s);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < i; ++j) a(i, j) = e.m(i, j);
  for (std::size_t j = 0; j < s; ++j) b[j] = e.m(s, j);
  return ButcherTableau(std::move(a), std::move(b));
}

/// Shu-Osher representation (Lambda, Gamma) over the extended system:
///   Y = alpha y_n + Lambda Y + h Gamma F(Y),  alpha = (I - Lambda) e.
/// Indices are 0-based: lambda(i, j) is the 1-based lambda_{i+1, j+1}.
class ShuOsherForm {
 public:
  ShuOsherForm(Matrix lambda, Matrix gamma) : lambda_(std::move(lambda)), gamma_(std::move(gamma)) {
    if (!lambda_.square() || !gamma_.square() || lambda_.rows() != gamma_.rows())
      throw Error(ErrorCode::DimensionMismatch, "Lambda and Gamma must be square and equal-sized");
    if (lambda_.rows() < 2) throw Error(ErrorCode::DimensionMismatch, "Shu-Osher form needs s >= 1");
    if (!is_strictly_lower(lambda_) || !is_strictly_lower(gamma_))
      throw Error(ErrorCode::InvalidArgument, "Lambda and Gamma must be strictly lower triangular");
  }

  std::size_t dim() const noexcept { return lambda_.rows(); }
  std::size_t stages() const noexcept { return lambda_.rows() - 1; }
  const Matrix& lambda() const noexcept { return lambda_; }
  const Matrix& gamma() const noexcept { return gamma_; }
  double lambda(std::size_t i, std::size_t j) const { return lambda_(i, j); }
  double gamma(std::size_t i, std::size_t j) const { return gamma_(i, j); }

  std::vector<double> alpha() const {
    std::vector<double> a(dim(), 1.0);
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < i; ++j) a[i] -= lambda_(i, j);
    return a;
  }

  bool is_canonical(double tol = 1e-13) const {
    const auto a = alpha();
    if (std::abs(a[0] - 1.0) > tol) return false;
    for (std::size_t i = 1; i < a.size(); ++i)
      if (std::abs(a[i]) > tol) return false;
    return true;
  }

 private:
  Matrix lambda_;
  Matrix gamma_;
};

/// Recovers the Butcher tableau from (I - Lambda) X = Gamma by forward
/// substitution.
inline ButcherTableau shu_osher_to_butcher(const ShuOsherForm& f) {
  const Matrix x = forward_substitute(Matrix::identity(f.dim()) - f.lambda(), f.gamma());
  return tableau_from_extended(ExtendedMatrix{x});
}

inline double max_abs_diff(const ButcherTableau& x, const ButcherTableau& y) {
  return max_abs_diff(extended_matrix(x).m, extended_matrix(y).m);
}

}  // namespace ssprk
