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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stot/channel.hpp"
#include "stot/distributions.hpp"
#include "stot/state_over_time.hpp"
#include "stot/tolerances.hpp"

namespace stot {

/// How blocks (k, l) with s_k + s_l ≈ 0 and a vanishing target are filled.
enum class KernelCompletion {
  /// X_kl = 0 (least-norm solution).
  MinimalNorm,
  /// X_kk = 1/dim_a on the diagonal kernel blocks, so Tr_A X = 1 and the
  /// solution is a trace-preserving Jamiołkowski operator.
  TracePreserving,
};

struct AnticommutatorSolution {
  ComplexMatrix x;
  /// ‖½{σ ⊗ 1, X} − c‖_F.
  double residual = 0.0;
  RealVector sigma_eigenvalues;
  /// Kernel-kernel blocks that were completed rather than solved.
  std::vector<std::pair<int, int>> kernel_blocks;
};

/// Solves ½{σ ⊗ 1, X} = c for X on H_σ ⊗ H_other (other factor of size dim_other).
///
/// Works blockwise in the eigenbasis of σ: X_kl = 2 c_kl / (s_k + s_l). Throws
/// NoSolution listing offending (k, l) when s_k + s_l ≤ support_tol but
/// ‖c_kl‖_F > support_tol.
AnticommutatorSolution solve_anticommutator(
    const HermitianOperator& sigma, const ComplexMatrix& c, int dim_other,
    double support_tol = default_tolerances().support,
    KernelCompletion completion = KernelCompletion::MinimalNorm);

enum class InverseStatus { Exact, ApproximateCP, NoSolution };

const char* to_string(InverseStatus status);

struct SupportDiagnostics {
  RealVector sigma_eigenvalues;  // spectrum of σ = ℰ(ρ)
  int sigma_rank = 0;
  std::vector<std::pair<int, int>> completed_blocks;
  std::vector<std::pair<int, int>> obstruction_blocks;
};

struct BayesianInverseResult {
  InverseStatus status = InverseStatus::NoSolution;
  std::optional<QuantumChannel> channel;  // B → A, present when status is Exact
  ComplexMatrix jamiolkowski_solution;    // solved 𝒥[ℱ] on H_B ⊗ H_A
  double solver_residual = 0.0;
  /// ‖½{σ ⊗ 1, 𝒥[ℱ]} − S ϱ_AB S‖_F using the recovered channel (Exact only).
  double bayes_residual = 0.0;
  double min_choi_eigenvalue = 0.0;
  double tp_residual = 0.0;
  SupportDiagnostics diagnostics;
  std::string message;
};

/// Finds ℱ: B → A with S ϱ_BA S = ϱ_AB, where ϱ_BA = ½{ℰ(ρ) ⊗ 1, 𝒥[ℱ]}.
///
/// Never throws for an unsolvable instance; the status carries the outcome.
BayesianInverseResult bayesian_inverse(const QuantumChannel& e, const DensityOperator& rho,
                                       const Tolerances& tol = default_tolerances());

/// ‖S ϱ_BA S − ϱ_AB‖_F for a candidate ℱ.
double verify_bayes_rule(const QuantumChannel& e, const DensityOperator& rho,
                         const QuantumChannel& f);

/// The scenario (ℰ(ρ), {Q_j}, ℱ, {P_i}).
TPSMScenario reversed_scenario(const TPSMScenario& s, const QuantumChannel& f);

/// Margenau-Hill table Q̄(j, i) of the reversed scenario (rows are Q outcomes).
JointQuasiDistribution reversed_mh(const TPSMScenario& s, const QuantumChannel& f,
                                   const Tolerances& tol = default_tolerances());

/// max_{i,j} |Q(i,j) − Q̄(j,i)|.
double time_reversal_residual(const TPSMScenario& s, const QuantumChannel& f,
                              const Tolerances& tol = default_tolerances());

struct BayesCell {
  int i = 0;
  int j = 0;
  bool defined = false;    // both Q(i) and Q̄(j) exceed the conditional tolerance
  double forward = 0.0;    // Q(j|i) Q(i), or Q(i,j) when undefined
  double reversed = 0.0;   // Q̄(i|j) Q̄(j), or Q̄(j,i) when undefined
  double residual = 0.0;
};

struct SpatiotemporalBayesReport {
  RealMatrix forward_conditional;   // Q(j|i) at (i, j); NaN where undefined
  RealMatrix reversed_conditional;  // Q̄(i|j) at (i, j); NaN where undefined
  std::vector<BayesCell> cells;
  int undefined_cells = 0;
  double max_defined_residual = 0.0;
  double max_undefined_residual = 0.0;
  bool passed = false;
};

/// Checks Q(j|i) Q(i) = Q̄(i|j) Q̄(j) on every cell with defined conditionals
/// (signs retained) and Q(i,j) = Q̄(j,i) on the rest, both to `check_tol`.
SpatiotemporalBayesReport spatiotemporal_bayes_check(const TPSMScenario& s, const QuantumChannel& f,
                                                     double check_tol = 1e-8,
                                                     const Tolerances& tol = default_tolerances());

}  // namespace stot
