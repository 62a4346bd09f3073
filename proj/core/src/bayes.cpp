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

#include "stot/bayes.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "stot/errors.hpp"

namespace stot {

AnticommutatorSolution solve_anticommutator(const HermitianOperator& sigma, const ComplexMatrix& c,
                                            int dim_other, double support_tol,
                                            KernelCompletion completion) {
  const int ds = sigma.dim();
  const int da = dim_other;
  if (da < 1 || c.rows() != c.cols() || c.rows() != ds * da) {
    throw DimensionMismatch("solve_anticommutator: target does not act on H_sigma (x) H_other");
  }
  const EigenDecomposition eig = eig_hermitian(sigma);
  const ComplexMatrix u = tensor(eig.vectors, identity(da));
  const ComplexMatrix c_eig = u.adjoint() * c * u;

  AnticommutatorSolution out;
  out.sigma_eigenvalues = eig.values;
  ComplexMatrix x_eig = ComplexMatrix::Zero(c.rows(), c.cols());
  std::vector<std::pair<int, int>> obstructions;
  for (int k = 0; k < ds; ++k)
    for (int l = 0; l < ds; ++l) {
      const double denom = eig.values(k) + eig.values(l);
      const auto block = c_eig.block(k * da, l * da, da, da);
      if (denom > support_tol) {
        x_eig.block(k * da, l * da, da, da) = (2.0 / denom) * block;
        continue;
      }
      if (block.norm() > support_tol) {
        obstructions.emplace_back(k, l);
        continue;
      }
      out.kernel_blocks.emplace_back(k, l);
      if (completion == KernelCompletion::TracePreserving && k == l) {
        x_eig.block(k * da, l * da, da, da) = identity(da) / static_cast<double>(da);
      }
    }

  out.x = u * x_eig * u.adjoint();
  const ComplexMatrix sigma_ext = tensor(sigma.matrix(), identity(da));
  out.residual = (0.5 * anticommutator(sigma_ext, out.x) - c).norm();
  if (!obstructions.empty()) {
    std::ostringstream os;
    os << "solve_anticommutator: kernel obstruction in " << obstructions.size()
       << " block(s) of the sigma eigenbasis, first (" << obstructions.front().first << ", "
       << obstructions.front().second << ")";
    throw NoSolution(os.str(), std::move(obstructions), out.residual);
  }
  return out;
}

const char* to_string(InverseStatus status) {
  switch (status) {
    case InverseStatus::Exact: return "Exact";
    case InverseStatus::ApproximateCP: return "ApproximateCP";
    case InverseStatus::NoSolution: return "NoSolution";
  }
  return "?";
}

namespace {

/// Refills the kernel-input block of the Choi matrix of 𝒥[ℱ] with the smallest
/// value keeping it PSD (a Schur complement), then adds (1 − T) ⊗ 1/d_A so
/// that ℱ stays trace preserving. A CP and TP completion exists iff this one
/// is PSD, so the 1/d_A fill is kept whenever the refill fails.
ComplexMatrix complete_kernel_cp(const ComplexMatrix& x, const EigenDecomposition& eig, int da,
                                 double support_tol, double cp_tol) {
  const int ds = static_cast<int>(eig.values.size());
  std::vector<int> sup, ker;
  for (int k = 0; k < ds; ++k) (eig.values(k) + eig.values(k) > support_tol ? sup : ker).push_back(k);
  if (ker.empty() || sup.empty()) return x;

  const ComplexMatrix u = tensor(eig.vectors, identity(da));
  ComplexMatrix x_eig = u.adjoint() * x * u;
  // Choi block (k, l) is F(|k⟩⟨l|), the Jamiołkowski block (l, k).
  auto gather = [&](const std::vector<int>& rows, const std::vector<int>& cols) {
    ComplexMatrix m(static_cast<Eigen::Index>(rows.size()) * da, static_cast<Eigen::Index>(cols.size()) * da);
    for (std::size_t a = 0; a < rows.size(); ++a)
      for (std::size_t b = 0; b < cols.size(); ++b)
        m.block(a * da, b * da, da, da) = x_eig.block(cols[b] * da, rows[a] * da, da, da);
    return m;
  };
  const ComplexMatrix c_ss = gather(sup, sup);
  const ComplexMatrix c_sk = gather(sup, ker);

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (c_ss + c_ss.adjoint()));
  if (es.eigenvalues().minCoeff() < -cp_tol) return x;
  RealVector inv = RealVector::Zero(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < inv.size(); ++i)
    if (es.eigenvalues()(i) > cp_tol) inv(i) = 1.0 / es.eigenvalues()(i);
  const ComplexMatrix pinv = es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().adjoint();
  if ((c_ss * pinv * c_sk - c_sk).norm() > cp_tol) return x;

  const int nk = static_cast<int>(ker.size());
  ComplexMatrix c_kk = c_sk.adjoint() * pinv * c_sk;
  ComplexMatrix rest = identity(nk);
  for (int a = 0; a < nk; ++a)
    for (int b = 0; b < nk; ++b) rest(a, b) -= trace(c_kk.block(a * da, b * da, da, da));
  rest = 0.5 * (rest + rest.adjoint());
  if (Eigen::SelfAdjointEigenSolver<ComplexMatrix>(rest).eigenvalues().minCoeff() < -cp_tol) return x;
  c_kk += tensor(rest, identity(da) / static_cast<double>(da));

  for (int a = 0; a < nk; ++a)
    for (int b = 0; b < nk; ++b) x_eig.block(ker[b] * da, ker[a] * da, da, da) = c_kk.block(a * da, b * da, da, da);
  return u * x_eig * u.adjoint();
}

}  // namespace

BayesianInverseResult bayesian_inverse(const QuantumChannel& e, const DensityOperator& rho,
                                       const Tolerances& tol) {
  if (rho.dim() != e.dim_in()) {
    throw DimensionMismatch("bayesian_inverse: state dimension does not match channel input");
  }
  const StateOverTime forward = state_over_time(rho, e, tol);
  const ComplexMatrix target = swap_conjugate(forward.matrix(), forward.idx());
  const HermitianOperator sigma(e.apply(rho.matrix()), tol.hermiticity);
  const BipartiteIndex reversed_idx{e.dim_out(), e.dim_in()};

  BayesianInverseResult r;
  const EigenDecomposition sigma_eig = eig_hermitian(sigma, tol.spectral);
  r.diagnostics.sigma_eigenvalues = sigma_eig.values;
  for (Eigen::Index k = 0; k < sigma_eig.values.size(); ++k)
    if (sigma_eig.values(k) > tol.support) ++r.diagnostics.sigma_rank;

  AnticommutatorSolution sol;
  try {
    sol = solve_anticommutator(sigma, target, e.dim_in(), tol.support,
                               KernelCompletion::TracePreserving);
  } catch (const NoSolution& err) {
    r.status = InverseStatus::NoSolution;
    r.solver_residual = err.residual();
    r.diagnostics.obstruction_blocks = err.blocks();
    r.message = err.what();
    return r;
  }
  sol.x = complete_kernel_cp(sol.x, sigma_eig, e.dim_in(), tol.support, tol.cp);
  r.jamiolkowski_solution = sol.x;
  r.solver_residual = sol.residual;
  r.diagnostics.completed_blocks = sol.kernel_blocks;

  const ComplexMatrix choi_solution = partial_transpose_a(sol.x, reversed_idx);
  r.min_choi_eigenvalue =
      eig_hermitian(HermitianOperator(choi_solution, 1e-10), tol.spectral).values(0);
  r.tp_residual = max_abs(partial_trace(sol.x, reversed_idx, Subsystem::B) - identity(e.dim_out()));

  try {
    r.channel = channel_from_jamiolkowski({reversed_idx, sol.x},
                                          {tol.cp, tol.cp, tol.kraus_truncation});
  } catch (const NotCompletelyPositive& err) {
    r.status = InverseStatus::ApproximateCP;
    r.message = err.what();
    return r;
  } catch (const NotTracePreserving& err) {
    r.status = InverseStatus::NoSolution;
    r.message = err.what();
    return r;
  }

  const ComplexMatrix recovered =
      0.5 * anticommutator(tensor(sigma.matrix(), identity(e.dim_in())),
                           r.channel->jamiolkowski().matrix);
  r.bayes_residual = (recovered - target).norm();
  if (r.bayes_residual > tol.cp) {
    std::ostringstream os;
    os << "bayesian_inverse: recovered channel misses the Bayes rule by " << r.bayes_residual;
    r.status = InverseStatus::NoSolution;
    r.message = os.str();
    r.channel.reset();
    return r;
  }
  r.status = InverseStatus::Exact;
  return r;
}

double verify_bayes_rule(const QuantumChannel& e, const DensityOperator& rho,
                         const QuantumChannel& f) {
  if (f.dim_in() != e.dim_out() || f.dim_out() != e.dim_in()) {
    throw DimensionMismatch("verify_bayes_rule: candidate must map B back to A");
  }
  const ComplexMatrix forward = state_over_time_matrix(rho.matrix(), e);
  const ComplexMatrix backward = state_over_time_matrix(e.apply(rho.matrix()), f);
  return (swap_conjugate(backward, {e.dim_out(), e.dim_in()}) - forward).norm();
}

TPSMScenario reversed_scenario(const TPSMScenario& s, const QuantumChannel& f) {
  if (f.dim_in() != s.channel().dim_out() || f.dim_out() != s.channel().dim_in()) {
    throw DimensionMismatch("reversed_scenario: reverse channel must map B back to A");
  }
  return TPSMScenario(apply(s.channel(), s.rho()), s.pvm_b(), f, s.pvm_a());
}

JointQuasiDistribution reversed_mh(const TPSMScenario& s, const QuantumChannel& f,
                                   const Tolerances& tol) {
  JointQuasiDistribution d = mh_distribution(reversed_scenario(s, f), tol);
  d.kind = DistributionKind::ReversedMH;
  return d;
}

double time_reversal_residual(const TPSMScenario& s, const QuantumChannel& f,
                              const Tolerances& tol) {
  const JointQuasiDistribution q = mh_distribution(s, tol);
  const JointQuasiDistribution qbar = reversed_mh(s, f, tol);
  return (q.values - qbar.values.transpose()).cwiseAbs().maxCoeff();
}

SpatiotemporalBayesReport spatiotemporal_bayes_check(const TPSMScenario& s, const QuantumChannel& f,
                                                     double check_tol, const Tolerances& tol) {
  const JointQuasiDistribution q = mh_distribution(s, tol);
  const JointQuasiDistribution qbar = reversed_mh(s, f, tol);
  const RealVector q_marg = q.row_marginal();        // Q(i)
  const RealVector qbar_marg = qbar.row_marginal();  // Q̄(j)
  const double nan = std::numeric_limits<double>::quiet_NaN();

  SpatiotemporalBayesReport r;
  r.forward_conditional = RealMatrix::Constant(q.rows(), q.cols(), nan);
  r.reversed_conditional = RealMatrix::Constant(q.rows(), q.cols(), nan);
  for (int i = 0; i < q.rows(); ++i)
    for (int j = 0; j < q.cols(); ++j) {
      BayesCell cell;
      cell.i = i;
      cell.j = j;
      cell.defined =
          std::abs(q_marg(i)) > tol.conditional && std::abs(qbar_marg(j)) > tol.conditional;
      if (cell.defined) {
        const double fwd = q.values(i, j) / q_marg(i);
        const double rev = qbar.values(j, i) / qbar_marg(j);
        r.forward_conditional(i, j) = fwd;
        r.reversed_conditional(i, j) = rev;
        cell.forward = fwd * q_marg(i);
        cell.reversed = rev * qbar_marg(j);
        cell.residual = std::abs(cell.forward - cell.reversed);
        r.max_defined_residual = std::max(r.max_defined_residual, cell.residual);
      } else {
        cell.forward = q.values(i, j);
        cell.reversed = qbar.values(j, i);
        cell.residual = std::abs(cell.forward - cell.reversed);
        r.max_undefined_residual = std::max(r.max_undefined_residual, cell.residual);
        ++r.undefined_cells;
      }
      r.cells.push_back(cell);
    }
  r.passed = r.max_defined_residual <= check_tol && r.max_undefined_residual <= check_tol;
  return r;
}

}  // namespace stot
