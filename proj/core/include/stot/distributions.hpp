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

#include "stot/channel.hpp"
#include "stot/state_over_time.hpp"
#include "stot/tolerances.hpp"

namespace stot {

/// Two-point sequential measurement (ρ, {P_i}, ℰ, {Q_j}): prepare ρ on A, measure
/// {P_i}, evolve with ℰ: A → B, measure {Q_j}.
class TPSMScenario {
 public:
  TPSMScenario(DensityOperator rho, ProjectiveMeasurement pvm_a, QuantumChannel channel,
               ProjectiveMeasurement pvm_b);

  const DensityOperator& rho() const { return rho_; }
  const ProjectiveMeasurement& pvm_a() const { return pvm_a_; }
  const QuantumChannel& channel() const { return channel_; }
  const ProjectiveMeasurement& pvm_b() const { return pvm_b_; }

 private:
  DensityOperator rho_;
  ProjectiveMeasurement pvm_a_;
  QuantumChannel channel_;
  ProjectiveMeasurement pvm_b_;
};

enum class DistributionKind { LVN, MH, Disturbance, ReversedMH };

const char* to_string(DistributionKind kind);

/// Real table indexed by (row outcome, column outcome).
struct JointQuasiDistribution {
  DistributionKind kind = DistributionKind::MH;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  RealMatrix values;

  int rows() const { return static_cast<int>(values.rows()); }
  int cols() const { return static_cast<int>(values.cols()); }
  double total() const { return values.sum(); }
  RealVector row_marginal() const { return values.rowwise().sum(); }
  RealVector col_marginal() const { return values.colwise().sum().transpose(); }
};

/// Throws ValidationError if the kind-specific invariant fails:
/// LVN entries ≥ −1e−12 with total 1, MH/ReversedMH total 1, Disturbance total 0.
void validate(const JointQuasiDistribution& d, const Tolerances& tol = default_tolerances());

/// P(i,j) = Tr[ℰ(P_i ρ P_i) Q_j].
JointQuasiDistribution lvn_distribution(const TPSMScenario& s,
                                        const Tolerances& tol = default_tolerances());

/// Q(i,j) = ½ Tr[ℰ(ρ P_i + P_i ρ) Q_j]. Throws ImaginaryResidueExceeded if any
/// entry has |Im| above tol.imaginary.
JointQuasiDistribution mh_distribution(const TPSMScenario& s,
                                       const Tolerances& tol = default_tolerances());

/// D(i,j) = ½ Tr[ℰ(ρ − ρ_i) Q_j] with ρ_i = P_i ρ P_i + (1 − P_i) ρ (1 − P_i).
///
/// Also evaluates the expectation-value form and throws ValidationError if the
/// two disagree by more than 1e−12.
JointQuasiDistribution disturbance_term(const TPSMScenario& s,
                                        const Tolerances& tol = default_tolerances());

/// ½ (⟨Q_j⟩_{ℰ(ρ)} − ⟨Q_j⟩_{ℰ(ρ_i)}): the same quantity written as a difference
/// of two measurable expectation values.
RealMatrix disturbance_from_expectations(const TPSMScenario& s);

/// Tr[ϱ (P_i ⊗ Q_j)] for a caller-supplied bipartite operator on H_A ⊗ H_B.
JointQuasiDistribution born_evaluate(const TPSMScenario& s, const ComplexMatrix& varrho,
                                     const Tolerances& tol = default_tolerances());
JointQuasiDistribution born_evaluate(const TPSMScenario& s, const StateOverTime& varrho,
                                     const Tolerances& tol = default_tolerances());

/// Groups of row labels; every row label must appear in exactly one group.
using OutcomePartition = std::vector<std::vector<std::string>>;

/// Sums rows per group. Merged labels are the group labels joined with '+'.
JointQuasiDistribution coarse_grain(const JointQuasiDistribution& d, const OutcomePartition& merge);
/// Replaces {P_i} by the summed projectors of each group.
TPSMScenario coarse_grain_scenario(const TPSMScenario& s, const OutcomePartition& merge);

struct CoarseGrainComparison {
  JointQuasiDistribution merged_distribution;     // coarse_grain(dist(s))
  JointQuasiDistribution distribution_of_merged;  // dist(coarse_grain_scenario(s))
  double max_deviation = 0.0;
};

/// For MH the two sides agree; for LVN they generically do not.
CoarseGrainComparison compare_coarse_graining(const TPSMScenario& s, const OutcomePartition& merge,
                                              DistributionKind kind,
                                              const Tolerances& tol = default_tolerances());

/// ⟨O_A, O_B⟩ = Tr[ℰ(P_1 ρ P_1) O_B] − Tr[ℰ(P_2 ρ P_2) O_B] with O_A = P_1 − P_2.
/// Requires a binary {P_i}.
double two_time_expectation(const TPSMScenario& s, const HermitianOperator& ob);

}  // namespace stot
