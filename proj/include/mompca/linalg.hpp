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
#include <span>
#include <vector>

#include "mompca/matrix.hpp"
#include "mompca/random.hpp"

namespace mompca {

/// Modified Gram-Schmidt with one re-orthogonalization pass.
/// Throws RankDeficientError when a column's residual norm drops below
/// 1e-12 times its original norm.
Basis gram_schmidt_orthonormalize(const Matrix& m);

/// ||VᵀV - I||_F for an arbitrary p x d matrix.
double orthonormality_residual(const Matrix& v);
inline double orthonormality_residual(const Basis& v) { return orthonormality_residual(v.matrix()); }

/// Σᵢ xᵢxᵢᵀ over the rows of x. Rows are summed in ascending order inside
/// fixed-size leaves and leaves are combined by a fixed pairwise tree, so the
/// result is bit-identical for a given input regardless of threading.
SymmetricMatrix scatter_matrix(const DataMatrix& x);

struct Eigenpairs {
  Basis vectors;
  std::vector<double> values;  // descending
  std::size_t iterations = 0;
};

/// Top-d eigenpairs of a symmetric matrix by oversampled subspace iteration
/// with Rayleigh-Ritz extraction. Each returned vector satisfies
/// ||Sv - λv|| <= 1e-10 ||S||_F; its largest-magnitude entry is positive.
Eigenpairs top_eigenvectors(const SymmetricMatrix& s, std::size_t d);

/// V(Vᵀx) without forming VVᵀ.
std::vector<double> apply_projector(const Basis& v, std::span<const double> x);

/// xᵀ(I - VVᵀ)x, evaluated as ||x - V(Vᵀx)||² so it is never negative and
/// stays accurate when x is nearly inside span(V).
double residual_value(const Basis& v, std::span<const double> x);

/// Principal-angle sines and cosines between span(a) and span(b), ascending
/// angle order. Sines come from ||(I - AAᵀ)B|| so small angles stay accurate.
struct PrincipalAngles {
  std::vector<double> cosines;
  std::vector<double> sines;
  std::vector<double> angles;  // radians
};
PrincipalAngles principal_angles(const Basis& a, const Basis& b);

namespace detail {

Basis make_basis(Matrix columns);

/// Symmetric eigendecomposition of a small dense matrix by cyclic Jacobi
/// rotations. Values descending; vectors are the matching columns.
struct DenseEigen {
  std::vector<double> values;
  Matrix vectors;
};
DenseEigen jacobi_eigen(Matrix a);

/// Orthonormalizes in place with MGS + one re-orthogonalization pass.
/// Columns that collapse are zeroed and reported; the rest stay orthonormal.
std::vector<std::size_t> orthonormalize_columns(Matrix& m);

/// Orthonormalizes; collapsed columns are replaced by seeded Gaussian draws
/// and the whole matrix is orthonormalized once more. A second failure throws.
Basis orthonormalize_with_recovery(const Matrix& m, RandomStream& rng);

void fix_sign(std::span<double> v);
void fix_column_signs(Matrix& m);

}  // namespace detail
}  // namespace mompca
