#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "ssprk/error.hpp"

namespace ssprk {

/// Row-major dense matrix sized for Runge-Kutta coefficient arrays
/// (dimension s+1, rarely above a dozen).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) {
        throw Error(ErrorCode::DimensionMismatch, "ragged matrix literal");
      }
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  Matrix& operator*=(double scale) {
    for (double& x : data_) x *= scale;
    return *this;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

  double min_entry() const {
    return data_.empty() ? 0.0 : *std::min_element(data_.begin(), data_.end());
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

inline Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "matrix product");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

inline std::vector<double> operator*(const Matrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw Error(ErrorCode::DimensionMismatch, "matrix-vector product");
  std::vector<double> out(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * x[j];
  return out;
}

inline Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::DimensionMismatch, "matrix difference");
  Matrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) -= b(i, j);
  return out;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::DimensionMismatch, "matrix comparison");
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

/// True when every entry on or above the diagonal is within tol of zero.
inline bool is_strictly_lower(const Matrix& m, double tol = 0.0) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j)
      if (std::abs(m(i, j)) > tol) return false;
  return true;
}

/// Solves L X = B with L lower triangular (forward substitution).
inline Matrix forward_substitute(const Matrix& lower, const Matrix& rhs) {
  const std::size_t n = lower.rows();
  if (!lower.square() || rhs.rows() != n)
    throw Error(ErrorCode::DimensionMismatch, "triangular solve");
  Matrix x(n, rhs.cols());
  for (std::size_t i = 0; i < n; ++i) {
    const double pivot = lower(i, i);
    if (std::abs(pivot) < 1e-300) throw Error(ErrorCode::SingularSystem, "zero pivot in triangular solve");
    for (std::size_t c = 0; c < rhs.cols(); ++c) {
      double acc = rhs(i, c);
      for (std::size_t k = 0; k < i; ++k) acc -= lower(i, k) * x(k, c);
      x(i, c) = acc / pivot;
    }
  }
  return x;
}

inline std::vector<double> forward_substitute(const Matrix& lower, std::span<const double> rhs) {
  Matrix b(rhs.size(), 1);
  for (std::size_t i = 0; i < rhs.size(); ++i) b(i, 0) = rhs[i];
  const Matrix x = forward_substitute(lower, b);
  std::vector<double> out(rhs.size());
  for (std::size_t i = 0; i < rhs.size(); ++i) out[i] = x(i, 0);
  return out;
}

/// Dense solve with partial pivoting; used by the small Gauss-Newton systems.
inline std::vector<double> solve_dense(Matrix a, std::vector<double> b) {
  const std::size_t n = a.rows();
  if (!a.square() || b.size() != n) throw Error(ErrorCode::DimensionMismatch, "dense solve");
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
    if (std::abs(a(p, k)) < 1e-300) throw Error(ErrorCode::SingularSystem, "singular dense system");
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      std::swap(b[k], b[p]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      if (f == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      b[i] -= f * b[k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double acc = b[i];
    for (std::size_t j = i + 1; j < n; ++j) acc -= a(i, j) * x[j];
    x[i] = acc / a(i, i);
  }
  return x;
}

}  // namespace ssprk
