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

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "stot/channel.hpp"
#include "stot/distributions.hpp"
#include "stot/tolerances.hpp"

namespace stot {

// ---------------------------------------------------------------------------
// Tomography

/// dim² projectors onto |k⟩, (|k⟩ + |l⟩)/√2 and (|k⟩ + i|l⟩)/√2 for k < l.
std::vector<ComplexMatrix> standard_frame(int dim);

/// A projector family together with how well it determines an operator.
struct TomographicFrame {
  int dim = 0;
  std::vector<ComplexMatrix> projectors;
  int rank = 0;                             // rank of the design matrix
  double design_min_singular_value = 0.0;   // rows f_m[(a,a')] = (P_m)_{a'a}
  double gram_min_singular_value = 0.0;     // Gram matrix Tr[P_m P_n]
};

TomographicFrame analyze_frame(int dim, std::vector<ComplexMatrix> projectors);
inline TomographicFrame make_standard_frame(int dim) {
  return analyze_frame(dim, standard_frame(dim));
}

/// Returns the quasiprobability assigned to outcome (P_A, P_B) of the binary
/// measurements {P_A, 1 − P_A} then {P_B, 1 − P_B}.
using ProjectorOracle = std::function<double(const ComplexMatrix&, const ComplexMatrix&)>;

/// Oracle that evaluates the Margenau-Hill distribution of (ρ, {P, 1−P}, ℰ, {Q, 1−Q}).
ProjectorOracle mh_oracle(const DensityOperator& rho, const QuantumChannel& e);

struct Reconstruction {
  ComplexMatrix matrix;        // on H_A ⊗ H_B
  double min_singular_value = 0.0;
  double ls_residual = 0.0;    // ‖design · ϱ − data‖_2 over all queried outcomes
  int queries = 0;
};

/// Least-squares inversion of Tr[ϱ (F ⊗ G)] = q over the standard frames on A
/// and B. Each frame projector is completed to its binary measurement and both
/// outcomes are queried, so the system is overdetermined and `ls_residual`
/// flags inconsistent data. Throws IllConditionedFrame when the design matrix
/// is numerically singular.
Reconstruction reconstruct_from_mh(const ProjectorOracle& oracle, BipartiteIndex dims,
                                   double min_singular_value = 1e-8);

// ---------------------------------------------------------------------------
// Searches

struct SearchBudget {
  int samples = 0;          // random projectors beyond the frame
  int iterations = 0;       // hill-climbing steps per refined start
  int refine_starts = 3;    // best candidates handed to the local optimizer
  std::uint64_t seed = 0;

  /// budget 0 is frame-only; otherwise n samples and n iterations per start.
  static SearchBudget from_total(int n, std::uint64_t seed) { return {n, n, 3, seed}; }
};

/// ρ_P = P ρ P + (1 − P) ρ (1 − P).
ComplexMatrix dephase(const ComplexMatrix& rho, const ComplexMatrix& p);

/// ‖ℰ(ρ − ρ_P)‖_F; zero for every P iff D vanishes on every scenario.
double born_violation(const DensityOperator& rho, const QuantumChannel& e, const ComplexMatrix& p);

bool is_maximally_mixed(const DensityOperator& rho, double tol = 1e-10);
bool is_discard_and_prepare(const QuantumChannel& e, double tol = 1e-10);

enum class BornVerdict { ExistsWithinTolerance, FailsWithWitness };

const char* to_string(BornVerdict verdict);

struct BornWitness {
  ComplexMatrix projector;  // P; the scenario measures {P, 1 − P}
  int i = 0;
  int j = 0;
  TPSMScenario scenario;
  double max_abs_difference = 0.0;  // max_{i,j} |P(i,j) − Q(i,j)| on `scenario`
};

struct BornExistenceReport {
  double max_violation = 0.0;
  BornVerdict verdict = BornVerdict::ExistsWithinTolerance;
  std::optional<BornWitness> witness;
  bool rho_maximally_mixed = false;
  bool channel_discard_and_prepare = false;
  int evaluations = 0;
};

/// Bounded search for a projector with ℰ(ρ − ρ_P) ≠ 0. A verdict of
/// ExistsWithinTolerance is evidence only; a witness is exact.
BornExistenceReport born_existence_check(const DensityOperator& rho, const QuantumChannel& e,
                                         const SearchBudget& budget, double threshold = 1e-8);

struct DisturbanceSearchResult {
  std::optional<TPSMScenario> scenario;  // empty only if the input was degenerate
  double value = 0.0;                    // max_{i,j} |D(i,j)| on `scenario`
  int evaluations = 0;
};

/// Maximizes max_{i,j} |D(i,j)| over binary first measurements; the second
/// measurement is chosen optimally for each candidate.
DisturbanceSearchResult search_max_disturbance(const DensityOperator& rho, const QuantumChannel& e,
                                               const SearchBudget& budget);

// ---------------------------------------------------------------------------
// Qubit necessity scan

/// Qubit states r·(sin θ cos φ, sin θ sin φ, cos θ) on the given radii; the
/// centre (r = 0) is included once if requested.
std::vector<DensityOperator> bloch_grid(const std::vector<double>& radii, int polar_steps,
                                        int azimuth_steps);

/// Rotations exp(−i t n·σ/2) about x, y and z for t = 2πk/steps, k = 1..steps−1.
std::vector<QuantumChannel> qubit_unitary_family(int steps);
/// X ↦ (1 − q) X + q Tr[X] 1/2 for each q in [0, 1]; q = 1 discards.
std::vector<QuantumChannel> qubit_depolarizing_family(const std::vector<double>& strengths);
/// a ↦ Tr[a] σ for each σ.
std::vector<QuantumChannel> qubit_discard_family(const std::vector<DensityOperator>& outputs);

struct ScanEntry {
  int state_index = 0;
  int channel_index = 0;
  double max_violation = 0.0;
  bool within_tolerance = false;
  bool maximally_mixed = false;
  bool discard_and_prepare = false;
  /// within tolerance but neither sufficient condition holds
  bool anomalous = false;
};

struct NecessityScanReport {
  std::vector<ScanEntry> entries;
  std::vector<ScanEntry> passing;    // entries within tolerance
  std::vector<ScanEntry> anomalies;  // passing entries explained by neither condition
};

NecessityScanReport qubit_necessity_scan(const std::vector<DensityOperator>& states,
                                         const std::vector<QuantumChannel>& channels, double tol,
                                         const SearchBudget& budget);

}  // namespace stot
