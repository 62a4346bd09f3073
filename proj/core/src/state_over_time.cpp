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

#include "stot/state_over_time.hpp"

#include <cmath>
#include <sstream>

#include "stot/errors.hpp"

namespace stot {

ComplexMatrix state_over_time_matrix(const ComplexMatrix& rho, const QuantumChannel& e) {
  if (rho.rows() != e.dim_in() || rho.cols() != e.dim_in()) {
    std::ostringstream os;
    os << "state_over_time: state is " << rho.rows() << "x" << rho.cols()
       << " but channel input dimension is " << e.dim_in();
    throw DimensionMismatch(os.str());
  }
  return 0.5 * anticommutator(tensor(rho, identity(e.dim_out())), e.jamiolkowski().matrix);
}

StateOverTime state_over_time(const DensityOperator& rho, const QuantumChannel& e,
                              const Tolerances& tol) {
  const ComplexMatrix raw = state_over_time_matrix(rho.matrix(), e);
  HermitianOperator op(raw, tol.hermiticity);
  const BipartiteIndex idx{e.dim_in(), e.dim_out()};

  const double tr_err = std::abs(op.matrix().trace() - Complex(1.0));
  if (tr_err > tol.identity) {
    std::ostringstream os;
    os << "state_over_time: |Tr - 1| = " << tr_err;
    throw ValidationError(os.str(), tr_err);
  }
  const MarginalReport m = check_marginals(op.matrix(), idx, rho, e, tol);
  if (!m.passed) {
    std::ostringstream os;
    os << "state_over_time: marginal residuals " << m.residual_a << ", " << m.residual_b;
    throw ValidationError(os.str(), std::max(m.residual_a, m.residual_b));
  }
  return StateOverTime(idx, std::move(op), rho, e);
}

MarginalReport check_marginals(const StateOverTime& s, const Tolerances& tol) {
  return check_marginals(s.matrix(), s.idx(), s.rho(), s.channel(), tol);
}

MarginalReport check_marginals(const ComplexMatrix& m, BipartiteIndex idx, const DensityOperator& rho,
                               const QuantumChannel& e, const Tolerances& tol) {
  if (idx.dim_a != rho.dim() || idx.dim_a != e.dim_in() || idx.dim_b != e.dim_out()) {
    throw DimensionMismatch("check_marginals: bipartite index does not match state and channel");
  }
  MarginalReport r;
  r.residual_a = (partial_trace(m, idx, Subsystem::B) - rho.matrix()).norm();
  r.residual_b = (partial_trace(m, idx, Subsystem::A) - e.apply(rho.matrix())).norm();
  r.passed = r.residual_a <= tol.identity && r.residual_b <= tol.identity;
  return r;
}

SpectrumReport spectrum_report(const HermitianOperator& h, const Tolerances& tol) {
  SpectrumReport r;
  r.eigenvalues = eig_hermitian(h, tol.spectral).values;
  double abs_sum = 0.0;
  for (Eigen::Index i = 0; i < r.eigenvalues.size(); ++i) {
    const double v = r.eigenvalues(i);
    abs_sum += std::abs(v);
    if (v < 0.0) r.negativity -= v;
  }
  r.causality_measure = abs_sum - 1.0;
  r.is_psd = r.negativity <= tol.spectrum_psd;
  r.borderline = r.negativity > 0.1 * tol.spectrum_psd && r.negativity <= 10.0 * tol.spectrum_psd;
  return r;
}

}  // namespace stot
