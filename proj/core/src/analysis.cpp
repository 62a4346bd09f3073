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

#include "stot/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "stot/errors.hpp"
#include "stot/random.hpp"

namespace stot {

namespace {

/// Row m holds f[(a, a')] = (P_m)_{a' a}, so Tr[X P_m] = f_m · vec(X).
ComplexMatrix design_matrix(const std::vector<ComplexMatrix>& projectors, int dim) {
  ComplexMatrix a(static_cast<Eigen::Index>(projectors.size()), dim * dim);
  for (std::size_t m = 0; m < projectors.size(); ++m)
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) a(static_cast<Eigen::Index>(m), i * dim + j) = projectors[m](j, i);
  return a;
}

std::vector<ComplexMatrix> with_complements(const std::vector<ComplexMatrix>& frame, int dim) {
  std::vector<ComplexMatrix> out;
  out.reserve(2 * frame.size());
  for (const auto& p : frame) {
    out.push_back(p);
    out.push_back(identity(dim) - p);
  }
  return out;
}

ComplexMatrix pseudo_inverse(const Eigen::JacobiSVD<ComplexMatrix>& svd) {
  const RealVector& s = svd.singularValues();
  RealVector inv(s.size());
  for (Eigen::Index k = 0; k < s.size(); ++k) inv(k) = s(k) > 0.0 ? 1.0 / s(k) : 0.0;
  return svd.matrixV() * inv.cast<Complex>().asDiagonal() * svd.matrixU().adjoint();
}

struct SearchOutcome {
  ComplexMatrix best;
  double value = -1.0;
  int evaluations = 0;
};

using Objective = std::function<double(const ComplexMatrix&)>;

ComplexMatrix projector_onto_columns(const ComplexMatrix& z) {
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  const ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(z.rows(), z.cols());
  return q * q.adjoint();
}

/// Columns spanning the range of projector p.
ComplexMatrix range_basis(const ComplexMatrix& p) {
  const EigenDecomposition eig = eig_hermitian(HermitianOperator(p, 1e-10));
  std::vector<Eigen::Index> cols;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k)
    if (eig.values(k) > 0.5) cols.push_back(k);
  ComplexMatrix z(p.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) z.col(static_cast<Eigen::Index>(c)) = eig.vectors.col(cols[c]);
  return z;
}

constexpr double kImprovement = 1e-12;

/// Frame sweep, then random projectors of cycling rank, then hill climbing on
/// the best few. Ties keep the earliest candidate.
SearchOutcome search_projectors(int dim, const Objective& objective, const SearchBudget& budget) {
  struct Candidate {
    ComplexMatrix p;
    double value;
  };
  std::vector<Candidate> candidates;
  SearchOutcome out;
  auto consider = [&](ComplexMatrix p) {
    const double v = objective(p);
    ++out.evaluations;
    if (v > out.value + (out.value < 0 ? 0.0 : kImprovement)) {
      out.value = v;
      out.best = p;
    }
    candidates.push_back({std::move(p), v});
  };

  if (dim == 1) {
    consider(identity(1));
    return out;
  }
  for (const auto& p : standard_frame(dim)) {
    consider(p);
    consider(identity(dim) - p);
  }

  Rng rng(budget.seed);
  for (int t = 0; t < budget.samples; ++t) {
    const int rank = 1 + t % (dim - 1);
    consider(random_projector(dim, rank, rng));
  }

  if (budget.iterations <= 0 || budget.refine_starts <= 0) return out;

  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return candidates[a].value > candidates[b].value;
  });
  const int starts = std::min<int>(budget.refine_starts, static_cast<int>(order.size()));
  for (int s = 0; s < starts; ++s) {
    Rng local(budget.seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(s + 1));
    ComplexMatrix z = range_basis(candidates[order[s]].p);
    if (z.cols() == 0 || z.cols() == dim) continue;
    double current = candidates[order[s]].value;
    double step = 0.3;
    for (int it = 0; it < budget.iterations; ++it) {
      const ComplexMatrix trial_z = z + step * ginibre(dim, static_cast<int>(z.cols()), local);
      ComplexMatrix trial = projector_onto_columns(trial_z);
      trial = (trial + trial.adjoint()) * 0.5;
      const double v = objective(trial);
      ++out.evaluations;
      if (v > current + kImprovement) {
        current = v;
        z = trial_z;
        step = std::min(1.0, step * 1.5);
        if (v > out.value + kImprovement) {
          out.value = v;
          out.best = trial;
        }
      } else {
        step = std::max(1e-6, step * 0.7);
      }
    }
  }
  return out;
}

/// H = ℰ(ρ − ρ_P).
ComplexMatrix disturbance_operator(const DensityOperator& rho, const QuantumChannel& e,
                                   const ComplexMatrix& p) {
  return e.apply(rho.matrix() - dephase(rho.matrix(), p));
}

/// max_Q |½ Tr[H Q]| over projectors Q.
double best_disturbance(const ComplexMatrix& h) {
  const RealVector ev = eig_hermitian(HermitianOperator(h, 1e-10)).values;
  double pos = 0.0;
  double neg = 0.0;
  for (Eigen::Index k = 0; k < ev.size(); ++k) (ev(k) > 0 ? pos : neg) += std::abs(ev(k));
  return 0.5 * std::max(pos, neg);
}

/// Scenario (ρ, {P, 1 − P}, ℰ, {Q, 1 − Q}) where Q collects the dominant-sign
/// eigenvectors of ℰ(ρ − ρ_P); computational second measurement if H ≈ 0.
TPSMScenario witness_scenario(const DensityOperator& rho, const QuantumChannel& e,
                              const ComplexMatrix& p) {
  const ComplexMatrix h = disturbance_operator(rho, e, p);
  const EigenDecomposition eig = eig_hermitian(HermitianOperator(h, 1e-10));
  const int dout = e.dim_out();
  double pos = 0.0;
  double neg = 0.0;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k)
    (eig.values(k) > 0 ? pos : neg) += std::abs(eig.values(k));
  const bool use_positive = pos >= neg;
  constexpr double kSignificant = 1e-12;
  ComplexMatrix q = ComplexMatrix::Zero(dout, dout);
  int rank = 0;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    const double v = eig.values(k);
    if ((use_positive && v > kSignificant) || (!use_positive && v < -kSignificant)) {
      q += outer(eig.vectors.col(k));
      ++rank;
    }
  }
  ProjectiveMeasurement pvm_b = (rank == 0 || rank == dout) ? computational_pvm(dout)
                                                            : binary_pvm((q + q.adjoint()) * 0.5);
  return TPSMScenario(rho, binary_pvm(p), e, std::move(pvm_b));
}

}  // namespace

std::vector<ComplexMatrix> standard_frame(int dim) {
  if (dim < 1) throw InvalidArgument("standard_frame: dim must be positive");
  std::vector<ComplexMatrix> frame;
  for (int k = 0; k < dim; ++k) frame.push_back(basis_op(dim, k, k));
  const double r = 1.0 / std::sqrt(2.0);
  for (int k = 0; k < dim; ++k)
    for (int l = k + 1; l < dim; ++l) {
      for (const Complex phase : {Complex(1.0, 0.0), Complex(0.0, 1.0)}) {
        ComplexVector v = ComplexVector::Zero(dim);
        v(k) = r;
        v(l) = r * phase;
        frame.push_back(outer(v));
      }
    }
  return frame;
}

TomographicFrame analyze_frame(int dim, std::vector<ComplexMatrix> projectors) {
  if (projectors.empty()) throw InvalidArgument("analyze_frame: empty frame");
  TomographicFrame f;
  f.dim = dim;
  f.projectors = std::move(projectors);
  const ComplexMatrix a = design_matrix(f.projectors, dim);
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  const RealVector& s = svd.singularValues();
  const double cutoff = 1e-10 * std::max(1.0, s(0));
  f.rank = static_cast<int>((s.array() > cutoff).count());
  f.design_min_singular_value = a.cols() <= a.rows() ? s(a.cols() - 1) : 0.0;

  const auto n = static_cast<Eigen::Index>(f.projectors.size());
  RealMatrix gram(n, n);
  for (Eigen::Index m = 0; m < n; ++m)
    for (Eigen::Index k = 0; k < n; ++k) gram(m, k) = (f.projectors[m] * f.projectors[k]).trace().real();
  Eigen::JacobiSVD<RealMatrix> gsvd(gram);
  f.gram_min_singular_value = gsvd.singularValues()(n - 1);
  return f;
}

ProjectorOracle mh_oracle(const DensityOperator& rho, const QuantumChannel& e) {
  return [rho, e](const ComplexMatrix& pa, const ComplexMatrix& pb) {
    const TPSMScenario s(rho, binary_pvm(pa), e, binary_pvm(pb));
    return mh_distribution(s).values(0, 0);
  };
}

Reconstruction reconstruct_from_mh(const ProjectorOracle& oracle, BipartiteIndex dims,
                                   double min_singular_value) {
  const int da = dims.dim_a;
  const int db = dims.dim_b;
  if (da < 2 || db < 2) throw InvalidArgument("reconstruct_from_mh: factor dimensions must be >= 2");
  const auto frame_a = with_complements(standard_frame(da), da);
  const auto frame_b = with_complements(standard_frame(db), db);
  const ComplexMatrix af = design_matrix(frame_a, da);
  const ComplexMatrix ag = design_matrix(frame_b, db);

  Eigen::JacobiSVD<ComplexMatrix> svd_a(af, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::JacobiSVD<ComplexMatrix> svd_b(ag, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Reconstruction out;
  out.min_singular_value = svd_a.singularValues()(da * da - 1) * svd_b.singularValues()(db * db - 1);
  if (out.min_singular_value < min_singular_value) {
    std::ostringstream os;
    os << "reconstruct_from_mh: design matrix smallest singular value " << out.min_singular_value
       << " below " << min_singular_value;
    throw IllConditionedFrame(os.str(), out.min_singular_value);
  }

  // Data q_mn = f_m^T r g_n, i.e. Q = A_F r A_G^T with r[(a,a'),(b,b')] = ϱ_{(ab),(a'b')}.
  ComplexMatrix data(static_cast<Eigen::Index>(frame_a.size()), static_cast<Eigen::Index>(frame_b.size()));
  for (std::size_t m = 0; m < frame_a.size(); ++m)
    for (std::size_t n = 0; n < frame_b.size(); ++n) {
      data(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n)) = oracle(frame_a[m], frame_b[n]);
      ++out.queries;
    }
  const ComplexMatrix r = pseudo_inverse(svd_a) * data * pseudo_inverse(svd_b).transpose();
  out.ls_residual = (af * r * ag.transpose() - data).norm();

  ComplexMatrix rho(dims.dim(), dims.dim());
  for (int a = 0; a < da; ++a)
    for (int ap = 0; ap < da; ++ap)
      for (int b = 0; b < db; ++b)
        for (int bp = 0; bp < db; ++bp)
          rho(dims.flat(a, b), dims.flat(ap, bp)) = r(a * da + ap, b * db + bp);
  out.matrix = (rho + rho.adjoint()) * 0.5;
  return out;
}

ComplexMatrix dephase(const ComplexMatrix& rho, const ComplexMatrix& p) {
  const ComplexMatrix q = identity(static_cast<int>(p.rows())) - p;
  return p * rho * p + q * rho * q;
}

double born_violation(const DensityOperator& rho, const QuantumChannel& e, const ComplexMatrix& p) {
  return disturbance_operator(rho, e, p).norm();
}

bool is_maximally_mixed(const DensityOperator& rho, double tol) {
  return max_abs(rho.matrix() - identity(rho.dim()) / static_cast<double>(rho.dim())) <= tol;
}

bool is_discard_and_prepare(const QuantumChannel& e, double tol) {
  const int d = e.dim_in();
  const ComplexMatrix sigma = e.apply(basis_op(d, 0, 0));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const ComplexMatrix expected = i == j ? sigma : ComplexMatrix::Zero(e.dim_out(), e.dim_out());
      if (max_abs(e.apply(basis_op(d, i, j)) - expected) > tol) return false;
    }
  return true;
}

const char* to_string(BornVerdict verdict) {
  switch (verdict) {
    case BornVerdict::ExistsWithinTolerance: return "ExistsWithinTolerance";
    case BornVerdict::FailsWithWitness: return "FailsWithWitness";
  }
  return "?";
}

BornExistenceReport born_existence_check(const DensityOperator& rho, const QuantumChannel& e,
                                         const SearchBudget& budget, double threshold) {
  if (rho.dim() != e.dim_in()) throw DimensionMismatch("born_existence_check: state/channel mismatch");
  BornExistenceReport r;
  r.rho_maximally_mixed = is_maximally_mixed(rho);
  r.channel_discard_and_prepare = is_discard_and_prepare(e);

  const SearchOutcome found = search_projectors(
      rho.dim(), [&](const ComplexMatrix& p) { return born_violation(rho, e, p); }, budget);
  r.max_violation = found.value;
  r.evaluations = found.evaluations;
  if (r.max_violation <= threshold) {
    r.verdict = BornVerdict::ExistsWithinTolerance;
    return r;
  }

  r.verdict = BornVerdict::FailsWithWitness;
  TPSMScenario scenario = witness_scenario(rho, e, found.best);
  const RealMatrix diff = disturbance_term(scenario).values;
  Eigen::Index i = 0;
  Eigen::Index j = 0;
  const double worst = diff.cwiseAbs().maxCoeff(&i, &j);
  r.witness.emplace(BornWitness{found.best, static_cast<int>(i), static_cast<int>(j),
                                std::move(scenario), worst});
  return r;
}

DisturbanceSearchResult search_max_disturbance(const DensityOperator& rho, const QuantumChannel& e,
                                               const SearchBudget& budget) {
  if (rho.dim() != e.dim_in()) throw DimensionMismatch("search_max_disturbance: state/channel mismatch");
  const SearchOutcome found = search_projectors(
      rho.dim(),
      [&](const ComplexMatrix& p) { return best_disturbance(disturbance_operator(rho, e, p)); },
      budget);
  DisturbanceSearchResult out;
  out.evaluations = found.evaluations;
  if (rho.dim() < 2) {
    out.scenario.emplace(rho, computational_pvm(1), e, computational_pvm(e.dim_out()));
    out.value = 0.0;
    return out;
  }
  out.scenario.emplace(witness_scenario(rho, e, found.best));
  out.value = disturbance_term(*out.scenario).values.cwiseAbs().maxCoeff();
  return out;
}

std::vector<DensityOperator> bloch_grid(const std::vector<double>& radii, int polar_steps,
                                        int azimuth_steps) {
  if (polar_steps < 1 || azimuth_steps < 1) throw InvalidArgument("bloch_grid: steps must be positive");
  const ComplexMatrix x = (ComplexMatrix(2, 2) << 0, 1, 1, 0).finished();
  const ComplexMatrix y = (ComplexMatrix(2, 2) << 0, Complex(0, -1), Complex(0, 1), 0).finished();
  const ComplexMatrix z = (ComplexMatrix(2, 2) << 1, 0, 0, -1).finished();
  std::vector<DensityOperator> states;
  for (const double radius : radii) {
    if (radius < 0.0 || radius > 1.0) throw InvalidArgument("bloch_grid: radius outside [0, 1]");
    if (radius == 0.0) {
      states.push_back(maximally_mixed(2));
      continue;
    }
    for (int k = 0; k <= polar_steps; ++k) {
      const double theta = std::numbers::pi * k / polar_steps;
      const int n_phi = (k == 0 || k == polar_steps) ? 1 : azimuth_steps;
      for (int m = 0; m < n_phi; ++m) {
        const double phi = 2.0 * std::numbers::pi * m / azimuth_steps;
        const ComplexMatrix rho =
            0.5 * (identity(2) + radius * (std::sin(theta) * std::cos(phi) * x +
                                           std::sin(theta) * std::sin(phi) * y + std::cos(theta) * z));
        Tolerances tol;
        tol.psd = 1e-12;
        states.emplace_back(rho, tol);
      }
    }
  }
  return states;
}

std::vector<QuantumChannel> qubit_unitary_family(int steps) {
  if (steps < 2) throw InvalidArgument("qubit_unitary_family: need at least two steps");
  const ComplexMatrix paulis[3] = {
      (ComplexMatrix(2, 2) << 0, 1, 1, 0).finished(),
      (ComplexMatrix(2, 2) << 0, Complex(0, -1), Complex(0, 1), 0).finished(),
      (ComplexMatrix(2, 2) << 1, 0, 0, -1).finished()};
  std::vector<QuantumChannel> out;
  for (const auto& axis : paulis)
    for (int k = 1; k < steps; ++k) {
      const double t = 2.0 * std::numbers::pi * k / steps;
      const ComplexMatrix u = std::cos(t / 2) * identity(2) - Complex(0, 1) * std::sin(t / 2) * axis;
      out.push_back(unitary_channel(u));
    }
  return out;
}

std::vector<QuantumChannel> qubit_depolarizing_family(const std::vector<double>& strengths) {
  const ComplexMatrix paulis[3] = {
      (ComplexMatrix(2, 2) << 0, 1, 1, 0).finished(),
      (ComplexMatrix(2, 2) << 0, Complex(0, -1), Complex(0, 1), 0).finished(),
      (ComplexMatrix(2, 2) << 1, 0, 0, -1).finished()};
  std::vector<QuantumChannel> out;
  for (const double q : strengths) {
    if (q < 0.0 || q > 1.0) throw InvalidArgument("qubit_depolarizing_family: strength outside [0, 1]");
    std::vector<ComplexMatrix> kraus{std::sqrt(1.0 - 0.75 * q) * identity(2)};
    if (q > 0.0)
      for (const auto& p : paulis) kraus.push_back(std::sqrt(q / 4.0) * p);
    out.emplace_back(2, 2, std::move(kraus));
  }
  return out;
}

std::vector<QuantumChannel> qubit_discard_family(const std::vector<DensityOperator>& outputs) {
  std::vector<QuantumChannel> out;
  for (const auto& sigma : outputs) out.push_back(discard_and_prepare(2, sigma));
  return out;
}

NecessityScanReport qubit_necessity_scan(const std::vector<DensityOperator>& states,
                                         const std::vector<QuantumChannel>& channels, double tol,
                                         const SearchBudget& budget) {
  NecessityScanReport report;
  for (std::size_t si = 0; si < states.size(); ++si) {
    if (states[si].dim() != 2) throw InvalidArgument("qubit_necessity_scan: states must be qubits");
    for (std::size_t ci = 0; ci < channels.size(); ++ci) {
      if (channels[ci].dim_in() != 2) {
        throw InvalidArgument("qubit_necessity_scan: channels must act on a qubit");
      }
      const BornExistenceReport r = born_existence_check(states[si], channels[ci], budget, tol);
      ScanEntry entry;
      entry.state_index = static_cast<int>(si);
      entry.channel_index = static_cast<int>(ci);
      entry.max_violation = r.max_violation;
      entry.within_tolerance = r.max_violation <= tol;
      entry.maximally_mixed = r.rho_maximally_mixed;
      entry.discard_and_prepare = r.channel_discard_and_prepare;
      entry.anomalous = entry.within_tolerance && !entry.maximally_mixed && !entry.discard_and_prepare;
      report.entries.push_back(entry);
      if (entry.within_tolerance) report.passing.push_back(entry);
      if (entry.anomalous) report.anomalies.push_back(entry);
    }
  }
  return report;
}

}  // namespace stot
