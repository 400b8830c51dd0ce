/*
 * Copyright 2026 The MoMPCA Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "mompca/matrix.hpp"

#include <cmath>
#include <string>

#include "mompca/error.hpp"
#include "mompca/linalg.hpp"

namespace mompca {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), values_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  require(values_.size() == rows * cols, ErrorCode::DimensionMismatch,
          "matrix storage holds " + std::to_string(values_.size()) + " values, expected " +
              std::to_string(rows * cols));
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  values_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    require(r.size() == cols_, ErrorCode::DimensionMismatch, "ragged matrix literal");
    values_.insert(values_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::vector<double> Matrix::column(std::size_t j) const {
  std::vector<double> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

void Matrix::set_column(std::size_t j, std::span<const double> values) {
  require(values.size() == rows_, ErrorCode::DimensionMismatch, "column length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = values[i];
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.rows(), ErrorCode::DimensionMismatch, "multiply: inner dimensions differ");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto out = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      const auto brow = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) out[j] += aik * brow[j];
    }
  }
  return c;
}

Matrix transpose_multiply(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows(), ErrorCode::DimensionMismatch,
          "transpose_multiply: row counts differ");
  Matrix c(a.cols(), b.cols());
  for (std::size_t k = 0; k < a.rows(); ++k) {
    const auto arow = a.row(k);
    const auto brow = b.row(k);
    for (std::size_t i = 0; i < a.cols(); ++i) {
      const double aki = arow[i];
      auto out = c.row(i);
      for (std::size_t j = 0; j < b.cols(); ++j) out[j] += aki * brow[j];
    }
  }
  return c;
}

double frobenius_norm(const Matrix& m) { return std::sqrt(squared_norm(m.values())); }

double dot(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), ErrorCode::DimensionMismatch, "dot: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double squared_norm(std::span<const double> a) {
  double s = 0.0;
  for (const double v : a) s += v * v;
  return s;
}

DataMatrix::DataMatrix(Matrix values) : values_(std::move(values)) {
  require(values_.rows() >= 1 && values_.cols() >= 1, ErrorCode::InvalidInputs,
          "data matrix needs at least one row and one column");
  for (std::size_t i = 0; i < values_.rows(); ++i)
    for (std::size_t j = 0; j < values_.cols(); ++j)
      if (!std::isfinite(values_(i, j)))
        fail(ErrorCode::InvalidInputs, "non-finite value at row " + std::to_string(i) +
                                           ", column " + std::to_string(j));
}

Basis Basis::from_orthonormal(Matrix columns, double tolerance) {
  require(columns.cols() >= 1 && columns.cols() <= columns.rows(), ErrorCode::DimensionMismatch,
          "basis needs 1 <= d <= p");
  const double residual = orthonormality_residual(columns);
  require(residual <= tolerance, ErrorCode::InvalidInputs,
          "columns are not orthonormal (||VᵀV - I||_F = " + std::to_string(residual) + ")");
  return detail::make_basis(std::move(columns));
}

std::vector<double> Basis::coordinates(std::span<const double> x) const {
  require(x.size() == dim_ambient(), ErrorCode::DimensionMismatch,
          "vector has " + std::to_string(x.size()) + " entries, basis ambient dimension is " +
              std::to_string(dim_ambient()));
  const std::size_t d = dim_sub();
  std::vector<double> c(d, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    const auto vrow = columns_.row(i);
    for (std::size_t k = 0; k < d; ++k) c[k] += vrow[k] * xi;
  }
  return c;
}

std::vector<double> Basis::combine(std::span<const double> coefficients) const {
  require(coefficients.size() == dim_sub(), ErrorCode::DimensionMismatch,
          "coefficient count does not match basis dimension");
  std::vector<double> out(dim_ambient(), 0.0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto vrow = columns_.row(i);
    double s = 0.0;
    for (std::size_t k = 0; k < coefficients.size(); ++k) s += vrow[k] * coefficients[k];
    out[i] = s;
  }
  return out;
}

SymmetricMatrix::SymmetricMatrix(std::size_t dim) : dim_(dim), packed_(dim * (dim + 1) / 2, 0.0) {}

SymmetricMatrix SymmetricMatrix::from_lower(const Matrix& m) {
  require(m.rows() == m.cols(), ErrorCode::DimensionMismatch, "symmetric matrix must be square");
  SymmetricMatrix s(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j <= i; ++j) s.set(i, j, m(i, j));
  return s;
}

Matrix SymmetricMatrix::to_dense() const {
  Matrix m(dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const double v = (*this)(i, j);
      m(i, j) = v;
      m(j, i) = v;
    }
  return m;
}

double SymmetricMatrix::frobenius_norm() const {
  double s = 0.0;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const double v = (*this)(i, j);
      s += (i == j ? 1.0 : 2.0) * v * v;
    }
  return std::sqrt(s);
}

}  // namespace mompca
