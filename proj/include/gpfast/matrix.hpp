#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace gpfast {

using Vector = std::vector<double>;

/// Dense row-major matrix with value semantics.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  Matrix transpose() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, std::span<const double> x);

/// max_ij |a_ij|
double max_abs(const Matrix& a);
/// max_ij |a_ij - b_ij|; dimensions must agree.
double max_abs_diff(const Matrix& a, const Matrix& b);

/// Dense symmetric positive-definite matrix.
///
/// Symmetry and definiteness are trusted, not checked: factorizations read
/// only the lower triangle and report definiteness failures themselves.
/// `check_symmetric` exists for tests and debugging.
class SymPdMatrix {
 public:
  SymPdMatrix() = default;
  /// Takes ownership of a square matrix. Throws DimensionMismatch if not square.
  explicit SymPdMatrix(Matrix m);
  SymPdMatrix(std::initializer_list<std::initializer_list<double>> rows)
      : SymPdMatrix(Matrix(rows)) {}

  static SymPdMatrix identity(std::size_t n) { return SymPdMatrix(Matrix::identity(n)); }
  static SymPdMatrix diagonal(std::span<const double> diag) {
    return SymPdMatrix(Matrix::diagonal(diag));
  }

  std::size_t n() const noexcept { return m_.rows(); }
  double operator()(std::size_t i, std::size_t j) const noexcept { return m_(i, j); }
  const Matrix& dense() const noexcept { return m_; }
  Matrix release() && { return std::move(m_); }

  /// True when entries(i,j) == entries(j,i) bit for bit.
  bool check_symmetric() const noexcept;

  friend bool operator==(const SymPdMatrix&, const SymPdMatrix&) = default;

 private:
  Matrix m_;
};

/// Lower-triangular Cholesky factor with strictly positive diagonal.
class CholFactor {
 public:
  CholFactor() = default;
  explicit CholFactor(Matrix lower) : l_(std::move(lower)) {}

  std::size_t n() const noexcept { return l_.rows(); }
  double operator()(std::size_t i, std::size_t j) const noexcept { return l_(i, j); }
  const Matrix& lower() const noexcept { return l_; }

  /// Solves L z = b in place.
  void solve_lower_in_place(std::span<double> b) const noexcept;
  /// Writes L z to out, accumulating each row left to right.
  void multiply(std::span<const double> z, std::span<double> out) const noexcept;

 private:
  Matrix l_;
};

}  // namespace gpfast
