#include "gpfast/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gpfast/errors.hpp"

namespace gpfast {

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionMismatch(cols_, r.size());
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> diag) {
  Matrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

Matrix Matrix::transpose() const {
  constexpr std::size_t kTile = 32;
  Matrix t(cols_, rows_);
  for (std::size_t ib = 0; ib < rows_; ib += kTile) {
    for (std::size_t jb = 0; jb < cols_; jb += kTile) {
      const std::size_t ie = std::min(ib + kTile, rows_);
      const std::size_t je = std::min(jb + kTile, cols_);
      for (std::size_t i = ib; i < ie; ++i)
        for (std::size_t j = jb; j < je; ++j) t(j, i) = (*this)(i, j);
    }
  }
  return t;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch(a.cols(), b.rows());
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto ci = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      auto bk = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += aik * bk[j];
    }
  }
  return c;
}

Vector operator*(const Matrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw DimensionMismatch(a.cols(), x.size());
  Vector y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto ai = a.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) s += ai[j] * x[j];
    y[i] = s;
  }
  return y;
}

double max_abs(const Matrix& a) {
  double m = 0.0;
  for (double v : a.data()) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw DimensionMismatch(a.rows(), b.rows());
  if (a.cols() != b.cols()) throw DimensionMismatch(a.cols(), b.cols());
  double m = 0.0;
  auto da = a.data();
  auto db = b.data();
  for (std::size_t k = 0; k < da.size(); ++k) m = std::max(m, std::abs(da[k] - db[k]));
  return m;
}

SymPdMatrix::SymPdMatrix(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw DimensionMismatch(m_.rows(), m_.cols());
}

bool SymPdMatrix::check_symmetric() const noexcept {
  for (std::size_t i = 0; i < n(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (m_(i, j) != m_(j, i)) return false;
  return true;
}

void CholFactor::solve_lower_in_place(std::span<double> b) const noexcept {
  const std::size_t n = l_.rows();
  for (std::size_t i = 0; i < n; ++i) {
    auto li = l_.row(i);
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= li[k] * b[k];
    b[i] = s / li[i];
  }
}

void CholFactor::multiply(std::span<const double> z, std::span<double> out) const noexcept {
  const std::size_t n = l_.rows();
  for (std::size_t i = 0; i < n; ++i) {
    auto li = l_.row(i);
    double s = 0.0;
    for (std::size_t k = 0; k <= i; ++k) s += li[k] * z[k];
    out[i] = s;
  }
}

}  // namespace gpfast
