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

#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace mompca {

/// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> values);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return values_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return values_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {values_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {values_.data() + i * cols_, cols_}; }

  std::vector<double> column(std::size_t j) const;
  void set_column(std::size_t j, std::span<const double> values);

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

  Matrix transposed() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

Matrix multiply(const Matrix& a, const Matrix& b);
/// aᵀ·b without forming the transpose.
Matrix transpose_multiply(const Matrix& a, const Matrix& b);
double frobenius_norm(const Matrix& m);

double dot(std::span<const double> a, std::span<const double> b);
double squared_norm(std::span<const double> a);

/// N observations (rows) by p features. Non-empty and finite by construction.
class DataMatrix {
 public:
  explicit DataMatrix(Matrix values);
  DataMatrix(std::size_t rows, std::size_t cols, std::vector<double> values)
      : DataMatrix(Matrix(rows, cols, std::move(values))) {}
  DataMatrix(std::initializer_list<std::initializer_list<double>> rows)
      : DataMatrix(Matrix(rows)) {}

  std::size_t rows() const noexcept { return values_.rows(); }
  std::size_t cols() const noexcept { return values_.cols(); }
  double operator()(std::size_t i, std::size_t j) const { return values_(i, j); }
  std::span<const double> row(std::size_t i) const { return values_.row(i); }
  const Matrix& matrix() const noexcept { return values_; }

  friend bool operator==(const DataMatrix&, const DataMatrix&) = default;

 private:
  Matrix values_;
};

class Basis;
namespace detail {
Basis make_basis(Matrix columns);
}

/// p x d matrix with orthonormal columns. Only produced by orthonormalization
/// or by `from_orthonormal`, which verifies the invariant.
class Basis {
 public:
  static constexpr double kOrthonormalityTolerance = 1e-10;

  /// Wraps `columns` after checking ||VᵀV - I||_F <= tolerance.
  static Basis from_orthonormal(Matrix columns, double tolerance = kOrthonormalityTolerance);

  std::size_t dim_ambient() const noexcept { return columns_.rows(); }
  std::size_t dim_sub() const noexcept { return columns_.cols(); }
  const Matrix& matrix() const noexcept { return columns_; }
  double operator()(std::size_t i, std::size_t k) const { return columns_(i, k); }
  std::vector<double> column(std::size_t k) const { return columns_.column(k); }

  /// Vᵀx (length d).
  std::vector<double> coordinates(std::span<const double> x) const;
  /// V·c (length p).
  std::vector<double> combine(std::span<const double> coefficients) const;

 private:
  friend Basis detail::make_basis(Matrix columns);
  explicit Basis(Matrix columns) : columns_(std::move(columns)) {}
  Matrix columns_;
};

/// Symmetric p x p matrix; only the lower triangle is stored (packed by rows).
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(std::size_t dim);
  /// Takes the lower triangle of a square matrix.
  static SymmetricMatrix from_lower(const Matrix& m);

  std::size_t dim() const noexcept { return dim_; }
  double operator()(std::size_t i, std::size_t j) const { return packed_[index(i, j)]; }
  void set(std::size_t i, std::size_t j, double v) { packed_[index(i, j)] = v; }
  void add(std::size_t i, std::size_t j, double v) { packed_[index(i, j)] += v; }

  std::span<const double> packed() const noexcept { return packed_; }
  std::span<double> packed() noexcept { return packed_; }

  Matrix to_dense() const;
  double frobenius_norm() const;

 private:
  static std::size_t index(std::size_t i, std::size_t j) noexcept {
    return i >= j ? i * (i + 1) / 2 + j : j * (j + 1) / 2 + i;
  }
  std::size_t dim_ = 0;
  std::vector<double> packed_;
};

}  // namespace mompca
