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

#include "stot/channel.hpp"
#include "stot/operator.hpp"
#include "stot/tolerances.hpp"

namespace stot {

/// The canonical state over time ϱ_AB = ½{ρ ⊗ 1, 𝒥[ℰ]} on H_A ⊗ H_B.
///
/// Hermitian, unit trace, Tr_B ϱ = ρ and Tr_A ϱ = ℰ(ρ); generally not PSD.
/// Only constructible through state_over_time(), which checks all of that.
class StateOverTime {
 public:
  BipartiteIndex idx() const { return idx_; }
  const HermitianOperator& op() const { return op_; }
  const ComplexMatrix& matrix() const { return op_.matrix(); }
  const DensityOperator& rho() const { return rho_; }
  const QuantumChannel& channel() const { return channel_; }

 private:
  friend StateOverTime state_over_time(const DensityOperator&, const QuantumChannel&,
                                       const Tolerances&);
  StateOverTime(BipartiteIndex idx, HermitianOperator op, DensityOperator rho,
                QuantumChannel channel)
      : idx_(idx), op_(std::move(op)), rho_(std::move(rho)), channel_(std::move(channel)) {}

  BipartiteIndex idx_;
  HermitianOperator op_;
  DensityOperator rho_;
  QuantumChannel channel_;
};

/// Throws DimensionMismatch when rho.dim() != e.dim_in(), ValidationError when
/// a structural invariant fails (which indicates corrupted inputs).
StateOverTime state_over_time(const DensityOperator& rho, const QuantumChannel& e,
                              const Tolerances& tol = default_tolerances());

/// The bare operator ½{ρ ⊗ 1, 𝒥[ℰ]} without validation.
ComplexMatrix state_over_time_matrix(const ComplexMatrix& rho, const QuantumChannel& e);

struct MarginalReport {
  double residual_a = 0.0;  // ‖Tr_B ϱ − ρ‖_F
  double residual_b = 0.0;  // ‖Tr_A ϱ − ℰ(ρ)‖_F
  bool passed = false;
};

MarginalReport check_marginals(const StateOverTime& s, const Tolerances& tol = default_tolerances());
MarginalReport check_marginals(const ComplexMatrix& m, BipartiteIndex idx, const DensityOperator& rho,
                               const QuantumChannel& e, const Tolerances& tol = default_tolerances());

struct SpectrumReport {
  RealVector eigenvalues;          // ascending
  double negativity = 0.0;         // Σ |λ_i| over λ_i < 0
  double causality_measure = 0.0;  // Σ |λ_i| − 1
  bool is_psd = false;             // negativity ≤ spectrum_psd tolerance
  /// negativity within a factor of ten of the tolerance either way; the
  /// is_psd verdict should not be trusted for these.
  bool borderline = false;
};

SpectrumReport spectrum_report(const HermitianOperator& h, const Tolerances& tol = default_tolerances());
inline SpectrumReport spectrum_report(const StateOverTime& s,
                                      const Tolerances& tol = default_tolerances()) {
  return spectrum_report(s.op(), tol);
}

}  // namespace stot
