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

#include <string>
#include <vector>

#include "stot/operator.hpp"
#include "stot/tolerances.hpp"

namespace stot {

/// Positive semidefinite, unit-trace operator.
class DensityOperator {
 public:
  explicit DensityOperator(const ComplexMatrix& m, const Tolerances& tol = default_tolerances());

  int dim() const { return op_.dim(); }
  const ComplexMatrix& matrix() const { return op_.matrix(); }
  const HermitianOperator& op() const { return op_; }

 private:
  HermitianOperator op_;
};

DensityOperator maximally_mixed(int dim);
DensityOperator pure_state(const ComplexVector& psi);

/// Ordered projective measurement {P_i} with outcome labels.
///
/// Projectors may have any rank ≥ 1. Labels default to "0", "1", ...
class ProjectiveMeasurement {
 public:
  ProjectiveMeasurement(const std::vector<ComplexMatrix>& projectors,
                        std::vector<std::string> labels = {},
                        const Tolerances& tol = default_tolerances());

  int dim() const { return projectors_.front().dim(); }
  int size() const { return static_cast<int>(projectors_.size()); }
  const ComplexMatrix& projector(int i) const { return projectors_.at(i).matrix(); }
  const std::vector<HermitianOperator>& projectors() const { return projectors_; }
  const std::vector<std::string>& labels() const { return labels_; }
  int index_of(const std::string& label) const;

 private:
  std::vector<HermitianOperator> projectors_;
  std::vector<std::string> labels_;
};

ProjectiveMeasurement computational_pvm(int dim);
/// {P, 1 − P}.
ProjectiveMeasurement binary_pvm(const ComplexMatrix& p,
                                 const Tolerances& tol = default_tolerances());
/// Rank-1 projectors onto the columns of a unitary.
ProjectiveMeasurement pvm_from_basis(const ComplexMatrix& unitary);

/// 𝒥[ℰ] = Σ_{i,j} |i⟩⟨j| ⊗ ℰ(|j⟩⟨i|) on H_in ⊗ H_out, computational basis of H_in.
///
/// Satisfies Tr[𝒥(a ⊗ b)] = Tr[ℰ(a) b].
struct JamiolkowskiOperator {
  BipartiteIndex idx;
  ComplexMatrix matrix;
};

/// CPTP map in Kraus form with eagerly cached Choi and Jamiołkowski operators.
class QuantumChannel {
 public:
  QuantumChannel(int dim_in, int dim_out, std::vector<ComplexMatrix> kraus,
                 const Tolerances& tol = default_tolerances());

  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }
  /// Σ_{i,j} |i⟩⟨j| ⊗ ℰ(|i⟩⟨j|); PSD iff CP.
  const ComplexMatrix& choi() const { return choi_; }
  const JamiolkowskiOperator& jamiolkowski() const { return jamiolkowski_; }
  BipartiteIndex idx() const { return {dim_in_, dim_out_}; }

  ComplexMatrix apply(const ComplexMatrix& x) const;
  ComplexMatrix adjoint_apply(const ComplexMatrix& y) const;

 private:
  int dim_in_;
  int dim_out_;
  std::vector<ComplexMatrix> kraus_;
  ComplexMatrix choi_;
  JamiolkowskiOperator jamiolkowski_;
};

inline ComplexMatrix apply(const QuantumChannel& e, const ComplexMatrix& x) { return e.apply(x); }
inline ComplexMatrix adjoint_apply(const QuantumChannel& e, const ComplexMatrix& y) {
  return e.adjoint_apply(y);
}
DensityOperator apply(const QuantumChannel& e, const DensityOperator& rho);

inline const JamiolkowskiOperator& jamiolkowski(const QuantumChannel& e) {
  return e.jamiolkowski();
}
inline const ComplexMatrix& choi(const QuantumChannel& e) { return e.choi(); }

/// max over the product basis {|i⟩⟨j| ⊗ |k⟩⟨l|} of |Tr[J(a⊗b)] − Tr[ℰ(a)b]|.
double jamiolkowski_duality_residual(const QuantumChannel& e, const JamiolkowskiOperator& j);

struct ChoiConversionTolerances {
  double cp = 1e-10;
  double tp = 1e-10;
  double truncation = 1e-12;
};

/// Rebuilds a channel from its Choi operator on H_in ⊗ H_out (idx = {in, out}).
///
/// Kraus operators are read off the eigendecomposition; eigenvalues at or below
/// `truncation` are dropped. Throws NotCompletelyPositive with the minimum Choi
/// eigenvalue, or NotTracePreserving with ‖Tr_out C − 1‖_max.
QuantumChannel channel_from_choi(const ComplexMatrix& c, BipartiteIndex idx,
                                 const ChoiConversionTolerances& tol = {});
QuantumChannel channel_from_jamiolkowski(const JamiolkowskiOperator& j,
                                         const ChoiConversionTolerances& tol = {});

/// Largest entrywise deviation of the two maps on the basis {|i⟩⟨j|}.
double channel_distance_on_basis(const QuantumChannel& a, const QuantumChannel& b);

QuantumChannel identity_channel(int dim);
QuantumChannel unitary_channel(const ComplexMatrix& u);
/// a ↦ Tr[a] σ.
QuantumChannel discard_and_prepare(int dim_in, const DensityOperator& sigma);

/// Qubit erasure 2 → 3: ω ↦ (1 − λ) ω ⊕ 0 + λ Tr[ω] |2⟩⟨2|, λ ∈ (0, 1).
QuantumChannel erasure_channel(double lambda);

/// 3 → 2 channel acting as the identity on the embedded qubit block, sending
/// |2⟩⟨2| to diag(p, 1 − p) and annihilating the |i⟩⟨2|, |2⟩⟨i| coherences.
QuantumChannel erasure_bayesian_inverse(double lambda, double p);

}  // namespace stot
