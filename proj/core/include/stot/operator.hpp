// Copyright 2026 The stot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Dense complex-matrix foundation.
//
// Bipartite index convention, used by every function in this library:
// the basis vector |i_a⟩ ⊗ |i_b⟩ of H_A ⊗ H_B sits at flat index
// i_a · dim_b + i_b (i.e. the A factor is the slow index).

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

#include "stot/tolerances.hpp"

namespace stot {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Tensor-factor bookkeeping for H_A ⊗ H_B.
struct BipartiteIndex {
  int dim_a = 1;
  int dim_b = 1;

  int dim() const { return dim_a * dim_b; }
  int flat(int ia, int ib) const { return ia * dim_b + ib; }
  BipartiteIndex swapped() const { return {dim_b, dim_a}; }
  bool operator==(const BipartiteIndex&) const = default;
};

enum class Subsystem { A, B };

/// Throws ValidationError if any entry is NaN or infinite.
void require_finite(const ComplexMatrix& m, const char* what);
void require_square(const ComplexMatrix& m, const char* what);

/// A square matrix that is exactly Hermitian.
///
/// Construction accepts inputs within `hermiticity_tol` of Hermitian and stores
/// (M + M†)/2; anything further away is rejected.
class HermitianOperator {
 public:
  HermitianOperator() = default;
  explicit HermitianOperator(const ComplexMatrix& m,
                             double hermiticity_tol = default_tolerances().hermiticity);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const ComplexMatrix& matrix() const { return matrix_; }
  operator const ComplexMatrix&() const { return matrix_; }

 private:
  ComplexMatrix matrix_;
};

struct EigenDecomposition {
  RealVector values;     // ascending
  ComplexMatrix vectors; // columns are eigenvectors, unitary
};

ComplexMatrix identity(int dim);
/// |i⟩⟨j| in dimension `dim`.
ComplexMatrix basis_op(int dim, int i, int j);
/// |v⟩⟨v|.
ComplexMatrix outer(const ComplexVector& v);

Complex trace(const ComplexMatrix& m);
/// Largest entry modulus of any real or complex matrix expression; 0 when empty.
template <class Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : static_cast<double>(m.cwiseAbs().maxCoeff());
}
/// ‖M − M†‖_max.
double hermiticity_residual(const ComplexMatrix& m);

/// Kronecker product with the library index convention.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

/// Tr_A (which = A, result dim_b × dim_b) or Tr_B (which = B, dim_a × dim_a).
ComplexMatrix partial_trace(const ComplexMatrix& m, BipartiteIndex idx, Subsystem which);

/// Transpose of the A factor only: (|i⟩⟨j| ⊗ X) ↦ (|j⟩⟨i| ⊗ X).
ComplexMatrix partial_transpose_a(const ComplexMatrix& m, BipartiteIndex idx);

ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// S m S for the swap S|i⟩_A|j⟩_B = |j⟩_B|i⟩_A; the result is indexed by
/// idx.swapped().
ComplexMatrix swap_conjugate(const ComplexMatrix& m, BipartiteIndex idx);

/// The swap operator H_A ⊗ H_B → H_B ⊗ H_A as a (dim × dim) permutation.
ComplexMatrix swap_operator(BipartiteIndex idx);

/// h = V diag(λ) V† with ascending λ. Throws ConvergenceFailure when the
/// solver fails or the reconstruction residual exceeds `spectral_tol`.
EigenDecomposition eig_hermitian(const HermitianOperator& h,
                                 double spectral_tol = default_tolerances().spectral);

/// Tr[a† b].
Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace stot
