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

#include "mompca/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <string>

#include "mompca/error.hpp"
#include "mompca/parallel.hpp"

namespace mompca {
namespace {

constexpr double kCollapseRatio = 1e-12;
constexpr double kEigenResidualRatio = 1e-10;
constexpr std::uint64_t kEigenStartSeed = 0x5EEDULL;

// Column-major scratch copy; GS works column by column.
std::vector<std::vector<double>> to_columns(const Matrix& m) {
  std::vector<std::vector<double>> cols(m.cols(), std::vector<double>(m.rows()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) cols[j][i] = m(i, j);
  return cols;
}

void from_columns(const std::vector<std::vector<double>>& cols, Matrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = cols[j][i];
}

void project_out(std::vector<double>& v, const std::vector<double>& q) {
  const double r = dot(q, v);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] -= r * q[i];
}

// Two MGS passes of v against the accepted columns; returns the final norm.
double orthogonalize_against(std::vector<double>& v, const std::vector<std::vector<double>>& cols,
                             const std::vector<bool>& accepted, std::size_t upto) {
  for (int pass = 0; pass < 2; ++pass)
    for (std::size_t i = 0; i < upto; ++i)
      if (accepted[i]) project_out(v, cols[i]);
  return std::sqrt(squared_norm(v));
}

// Orthonormalizes and replaces collapsed columns with the first canonical
// vectors that survive orthogonalization, so the result always has full rank.
void orthonormalize_completing(Matrix& m) {
  const std::vector<std::size_t> collapsed = detail::orthonormalize_columns(m);
  if (collapsed.empty()) return;
  auto cols = to_columns(m);
  std::vector<bool> accepted(cols.size(), true);
  for (const std::size_t j : collapsed) accepted[j] = false;
  std::size_t next_canonical = 0;
  for (const std::size_t j : collapsed) {
    while (next_canonical < m.rows()) {
      std::vector<double> e(m.rows(), 0.0);
      e[next_canonical++] = 1.0;
      const double norm = orthogonalize_against(e, cols, accepted, cols.size());
      if (norm > 0.5) {
        for (double& x : e) x /= norm;
        cols[j] = std::move(e);
        accepted[j] = true;
        break;
      }
    }
    if (!accepted[j]) fail(ErrorCode::RankDeficient, "could not complete an orthonormal block");
  }
  from_columns(cols, m);
}

Matrix gaussian_matrix(std::size_t rows, std::size_t cols, RandomStream& rng) {
  Matrix m(rows, cols);
  for (double& v : m.values()) v = rng.normal();
  return m;
}

}  // namespace

namespace detail {

Basis make_basis(Matrix columns) {
  assert(orthonormality_residual(columns) <= Basis::kOrthonormalityTolerance);
  return Basis(std::move(columns));
}

std::vector<std::size_t> orthonormalize_columns(Matrix& m) {
  auto cols = to_columns(m);
  std::vector<bool> accepted(cols.size(), false);
  std::vector<std::size_t> collapsed;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    auto& v = cols[j];
    const double original = std::sqrt(squared_norm(v));
    const double norm = orthogonalize_against(v, cols, accepted, j);
    if (original == 0.0 || !(norm >= kCollapseRatio * original)) {
      std::fill(v.begin(), v.end(), 0.0);
      collapsed.push_back(j);
      continue;
    }
    for (double& x : v) x /= norm;
    accepted[j] = true;
  }
  from_columns(cols, m);
  return collapsed;
}

Basis orthonormalize_with_recovery(const Matrix& m, RandomStream& rng) {
  Matrix work = m;
  const std::vector<std::size_t> collapsed = orthonormalize_columns(work);
  if (collapsed.empty()) return make_basis(std::move(work));
  Matrix retry = m;
  for (const std::size_t j : collapsed)
    for (std::size_t i = 0; i < retry.rows(); ++i) retry(i, j) = rng.normal();
  return gram_schmidt_orthonormalize(retry);
}

DenseEigen jacobi_eigen(Matrix a) {
  require(a.rows() == a.cols(), ErrorCode::DimensionMismatch, "jacobi_eigen: matrix not square");
  const std::size_t n = a.rows();
  Matrix v = Matrix::identity(n);
  const double total = frobenius_norm(a);

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off == 0.0 || std::sqrt(off) <= 1e-15 * total) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        if (sweep > 3 && std::abs(apq) < 1e-17 * (std::abs(a(p, p)) + std::abs(a(q, q)))) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::abs(theta) > 1e150
                             ? 0.5 / theta
                             : std::copysign(1.0, theta) /
                                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });
  DenseEigen out{std::vector<double>(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

void fix_sign(std::span<double> v) {
  std::size_t best = 0;
  double best_mag = -1.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v[i]);
    // Near-ties resolve to the lowest index so roundoff cannot flip the sign.
    if (mag > best_mag * (1.0 + 1e-12) + 1e-300) {
      best_mag = mag;
      best = i;
    }
  }
  if (!v.empty() && v[best] < 0.0)
    for (double& x : v) x = -x;
}

void fix_column_signs(Matrix& m) {
  for (std::size_t k = 0; k < m.cols(); ++k) {
    auto col = m.column(k);
    fix_sign(col);
    m.set_column(k, col);
  }
}

}  // namespace detail

Basis gram_schmidt_orthonormalize(const Matrix& m) {
  require(m.cols() >= 1 && m.rows() >= m.cols(), ErrorCode::DimensionMismatch,
          "Gram-Schmidt needs p >= d >= 1, got " + std::to_string(m.rows()) + " x " +
              std::to_string(m.cols()));
  Matrix work = m;
  const std::vector<std::size_t> collapsed = detail::orthonormalize_columns(work);
  if (!collapsed.empty())
    throw RankDeficientError(collapsed.front(),
                             "column " + std::to_string(collapsed.front()) +
                                 " is linearly dependent on the preceding columns");
  return detail::make_basis(std::move(work));
}

double orthonormality_residual(const Matrix& v) {
  const Matrix gram = transpose_multiply(v, v);
  double s = 0.0;
  for (std::size_t i = 0; i < gram.rows(); ++i)
    for (std::size_t j = 0; j < gram.cols(); ++j) {
      const double e = gram(i, j) - (i == j ? 1.0 : 0.0);
      s += e * e;
    }
  return std::sqrt(s);
}

SymmetricMatrix scatter_matrix(const DataMatrix& x) {
  const std::size_t n = x.rows();
  const std::size_t p = x.cols();
  const std::size_t leaf_size = std::max<std::size_t>(64, (n + 63) / 64);
  const std::size_t leaf_count = (n + leaf_size - 1) / leaf_size;

  std::vector<SymmetricMatrix> leaves(leaf_count);
  parallel_for(leaf_count, [&](std::size_t leaf) {
    SymmetricMatrix acc(p);
    auto packed = acc.packed();
    const std::size_t end = std::min(n, (leaf + 1) * leaf_size);
    for (std::size_t r = leaf * leaf_size; r < end; ++r) {
      const auto row = x.row(r);
      for (std::size_t i = 0; i < p; ++i) {
        const double xi = row[i];
        double* out = packed.data() + i * (i + 1) / 2;
        for (std::size_t j = 0; j <= i; ++j) out[j] += xi * row[j];
      }
    }
    leaves[leaf] = std::move(acc);
  });

  // Fixed pairwise tree over leaf indices.
  auto combine = [&](auto&& self, std::size_t lo, std::size_t hi) -> SymmetricMatrix {
    if (hi - lo == 1) return std::move(leaves[lo]);
    const std::size_t mid = lo + (hi - lo) / 2;
    SymmetricMatrix left = self(self, lo, mid);
    const SymmetricMatrix right = self(self, mid, hi);
    auto lp = left.packed();
    const auto rp = right.packed();
    for (std::size_t k = 0; k < lp.size(); ++k) lp[k] += rp[k];
    return left;
  };
  return combine(combine, 0, leaf_count);
}

Eigenpairs top_eigenvectors(const SymmetricMatrix& s, std::size_t d) {
  const std::size_t p = s.dim();
  require(d >= 1 && d <= p, ErrorCode::InvalidInputs,
          "top_eigenvectors needs 1 <= d <= p, got d = " + std::to_string(d) +
              ", p = " + std::to_string(p));
  const std::size_t block = std::min(p, 2 * d + 8);
  const double norm = s.frobenius_norm();
  const double tolerance = kEigenResidualRatio * norm;

  if (norm == 0.0) {
    Matrix e(p, d);
    for (std::size_t k = 0; k < d; ++k) e(k, k) = 1.0;
    return {detail::make_basis(std::move(e)), std::vector<double>(d, 0.0), 0};
  }

  const Matrix dense = s.to_dense();
  RandomStream rng(kEigenStartSeed, Stream::EigenStart);
  Matrix q = gaussian_matrix(p, block, rng);
  orthonormalize_completing(q);

  // Unshifted iteration converges to the largest-|λ| block. If that block
  // could hide a larger positive eigenvalue, retry on S + ||S||_F I.
  double shift = 0.0;
  const std::size_t cap = std::max<std::size_t>(10 * p, 1);
  for (std::size_t it = 1; it <= cap; ++it) {
    const Matrix sq = multiply(dense, q);
    Matrix h = transpose_multiply(q, sq);
    for (std::size_t i = 0; i < block; ++i)
      for (std::size_t j = 0; j < i; ++j) {
        const double avg = 0.5 * (h(i, j) + h(j, i));
        h(i, j) = avg;
        h(j, i) = avg;
      }
    const detail::DenseEigen ritz = detail::jacobi_eigen(std::move(h));
    Matrix r = multiply(q, ritz.vectors);
    const Matrix sr = multiply(sq, ritz.vectors);

    bool converged = true;
    for (std::size_t k = 0; k < d && converged; ++k) {
      double res = 0.0;
      for (std::size_t i = 0; i < p; ++i) {
        const double e = sr(i, k) - ritz.values[k] * r(i, k);
        res += e * e;
      }
      converged = std::sqrt(res) <= tolerance;
    }
    if (converged && block < p && shift == 0.0) {
      double smallest_magnitude = std::abs(ritz.values.front());
      for (const double v : ritz.values) smallest_magnitude = std::min(smallest_magnitude, std::abs(v));
      if (ritz.values[d - 1] < smallest_magnitude) {
        shift = norm;
        converged = false;
      }
    }
    if (converged) {
      Matrix vectors(p, d);
      for (std::size_t i = 0; i < p; ++i)
        for (std::size_t k = 0; k < d; ++k) vectors(i, k) = r(i, k);
      detail::fix_column_signs(vectors);
      return {detail::make_basis(std::move(vectors)),
              std::vector<double>(ritz.values.begin(), ritz.values.begin() + d), it};
    }

    q = sr;
    if (shift != 0.0)
      for (std::size_t i = 0; i < p; ++i)
        for (std::size_t k = 0; k < block; ++k) q(i, k) += shift * r(i, k);
    orthonormalize_completing(q);
  }
  fail(ErrorCode::ConvergenceFailure, "subspace iteration did not reach residual tolerance in " +
                                          std::to_string(cap) + " iterations");
}

std::vector<double> apply_projector(const Basis& v, std::span<const double> x) {
  return v.combine(v.coordinates(x));
}

double residual_value(const Basis& v, std::span<const double> x) {
  const std::vector<double> projected = apply_projector(v, x);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = x[i] - projected[i];
    s += e * e;
  }
  return s;
}

PrincipalAngles principal_angles(const Basis& a, const Basis& b) {
  require(a.dim_ambient() == b.dim_ambient() && a.dim_sub() == b.dim_sub(),
          ErrorCode::DimensionMismatch, "principal angles need bases of equal shape");
  const std::size_t d = a.dim_sub();
  const Matrix cross = transpose_multiply(a.matrix(), b.matrix());
  Matrix w = b.matrix();
  const Matrix along = multiply(a.matrix(), cross);
  for (std::size_t i = 0; i < w.rows(); ++i)
    for (std::size_t k = 0; k < d; ++k) w(i, k) -= along(i, k);

  const auto cos2 = detail::jacobi_eigen(transpose_multiply(cross, cross)).values;  // descending
  const auto sin2 = detail::jacobi_eigen(transpose_multiply(w, w)).values;          // descending

  PrincipalAngles out;
  out.cosines.resize(d);
  out.sines.resize(d);
  out.angles.resize(d);
  for (std::size_t k = 0; k < d; ++k) {
    out.cosines[k] = std::clamp(std::sqrt(std::max(0.0, cos2[k])), 0.0, 1.0);
    out.sines[k] = std::clamp(std::sqrt(std::max(0.0, sin2[d - 1 - k])), 0.0, 1.0);
    out.angles[k] = std::atan2(out.sines[k], out.cosines[k]);
  }
  return out;
}

}  // namespace mompca
