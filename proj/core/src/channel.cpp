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

#include "stot/channel.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "stot/errors.hpp"

namespace stot {

DensityOperator::DensityOperator(const ComplexMatrix& m, const Tolerances& tol)
    : op_(m, tol.hermiticity) {
  const double tr_err = std::abs(op_.matrix().trace() - Complex(1.0));
  if (tr_err > tol.unit_trace) {
    std::ostringstream os;
    os << "DensityOperator: |Tr - 1| = " << tr_err << " exceeds " << tol.unit_trace;
    throw ValidationError(os.str(), tr_err);
  }
  const double min_eig = eig_hermitian(op_, tol.spectral).values(0);
  if (min_eig < -tol.psd) {
    std::ostringstream os;
    os << "DensityOperator: minimum eigenvalue " << min_eig << " below -" << tol.psd;
    throw ValidationError(os.str(), -min_eig);
  }
}

DensityOperator maximally_mixed(int dim) {
  if (dim < 1) throw InvalidArgument("maximally_mixed: dim must be positive");
  return DensityOperator(identity(dim) / static_cast<double>(dim));
}

DensityOperator pure_state(const ComplexVector& psi) {
  const double n = psi.norm();
  if (!(n > 0.0)) throw InvalidArgument("pure_state: zero vector");
  return DensityOperator(outer(psi / n));
}

ProjectiveMeasurement::ProjectiveMeasurement(const std::vector<ComplexMatrix>& projectors,
                                             std::vector<std::string> labels,
                                             const Tolerances& tol)
    : labels_(std::move(labels)) {
  if (projectors.empty()) throw InvalidArgument("ProjectiveMeasurement: no projectors");
  projectors_.reserve(projectors.size());
  for (const auto& p : projectors) projectors_.emplace_back(p, tol.hermiticity);
  const int d = projectors_.front().dim();
  for (const auto& p : projectors_) {
    if (p.dim() != d) throw DimensionMismatch("ProjectiveMeasurement: projector dimensions differ");
  }
  if (labels_.empty()) {
    for (std::size_t i = 0; i < projectors_.size(); ++i) labels_.push_back(std::to_string(i));
  }
  if (labels_.size() != projectors_.size()) {
    throw InvalidArgument("ProjectiveMeasurement: label count does not match projector count");
  }
  if (std::set<std::string>(labels_.begin(), labels_.end()).size() != labels_.size()) {
    throw InvalidArgument("ProjectiveMeasurement: duplicate outcome labels");
  }

  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (std::size_t i = 0; i < projectors_.size(); ++i) {
    const ComplexMatrix& pi = projectors_[i].matrix();
    if (pi.trace().real() < 0.5) {
      throw ValidationError("ProjectiveMeasurement: projector " + labels_[i] + " has rank 0", 1.0);
    }
    for (std::size_t j = 0; j < projectors_.size(); ++j) {
      const ComplexMatrix& pj = projectors_[j].matrix();
      const ComplexMatrix expected = (i == j) ? pi : ComplexMatrix::Zero(d, d);
      const double r = max_abs(pi * pj - expected);
      if (r > tol.pvm) {
        std::ostringstream os;
        os << "ProjectiveMeasurement: P_" << labels_[i] << " P_" << labels_[j]
           << " deviates from delta_ij P_i by " << r;
        throw ValidationError(os.str(), r);
      }
    }
    sum += pi;
  }
  const double r = max_abs(sum - identity(d));
  if (r > tol.pvm) {
    std::ostringstream os;
    os << "ProjectiveMeasurement: projectors sum to identity only within " << r;
    throw ValidationError(os.str(), r);
  }
}

int ProjectiveMeasurement::index_of(const std::string& label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw InvalidArgument("unknown outcome label '" + label + "'");
  return static_cast<int>(it - labels_.begin());
}

ProjectiveMeasurement computational_pvm(int dim) {
  std::vector<ComplexMatrix> ps;
  for (int i = 0; i < dim; ++i) ps.push_back(basis_op(dim, i, i));
  return ProjectiveMeasurement(ps);
}

ProjectiveMeasurement binary_pvm(const ComplexMatrix& p, const Tolerances& tol) {
  return ProjectiveMeasurement({p, identity(static_cast<int>(p.rows())) - p}, {}, tol);
}

ProjectiveMeasurement pvm_from_basis(const ComplexMatrix& unitary) {
  std::vector<ComplexMatrix> ps;
  for (Eigen::Index k = 0; k < unitary.cols(); ++k) ps.push_back(outer(unitary.col(k)));
  return ProjectiveMeasurement(ps);
}

namespace {

ComplexMatrix build_choi(int dim_in, int dim_out, const std::vector<ComplexMatrix>& kraus) {
  // vec(K)[i * dim_out + o] = K(o, i); C = Σ_k vec(K_k) vec(K_k)†.
  const int n = dim_in * dim_out;
  ComplexMatrix c = ComplexMatrix::Zero(n, n);
  ComplexVector v(n);
  for (const auto& k : kraus) {
    for (int i = 0; i < dim_in; ++i)
      for (int o = 0; o < dim_out; ++o) v(i * dim_out + o) = k(o, i);
    c.noalias() += v * v.adjoint();
  }
  return c;
}

}  // namespace

QuantumChannel::QuantumChannel(int dim_in, int dim_out, std::vector<ComplexMatrix> kraus,
                               const Tolerances& tol)
    : dim_in_(dim_in), dim_out_(dim_out), kraus_(std::move(kraus)) {
  if (dim_in < 1 || dim_out < 1) throw InvalidArgument("QuantumChannel: dimensions must be positive");
  if (kraus_.empty()) throw InvalidArgument("QuantumChannel: empty Kraus set");
  ComplexMatrix tp = ComplexMatrix::Zero(dim_in, dim_in);
  for (const auto& k : kraus_) {
    if (k.rows() != dim_out || k.cols() != dim_in) {
      std::ostringstream os;
      os << "QuantumChannel: Kraus operator is " << k.rows() << "x" << k.cols() << ", expected "
         << dim_out << "x" << dim_in;
      throw DimensionMismatch(os.str());
    }
    require_finite(k, "QuantumChannel");
    tp.noalias() += k.adjoint() * k;
  }
  const double tp_res = max_abs(tp - identity(dim_in));
  if (tp_res > tol.channel) {
    std::ostringstream os;
    os << "QuantumChannel: sum K^dag K deviates from identity by " << tp_res;
    throw NotTracePreserving(os.str(), tp_res);
  }

  choi_ = build_choi(dim_in, dim_out, kraus_);
  const double min_eig = eig_hermitian(HermitianOperator(choi_, tol.channel), tol.spectral).values(0);
  if (min_eig < -tol.channel) {
    std::ostringstream os;
    os << "QuantumChannel: Choi operator has eigenvalue " << min_eig;
    throw NotCompletelyPositive(os.str(), min_eig);
  }

  jamiolkowski_.idx = {dim_in, dim_out};
  jamiolkowski_.matrix = ComplexMatrix::Zero(dim_in * dim_out, dim_in * dim_out);
  for (int i = 0; i < dim_in; ++i)
    for (int j = 0; j < dim_in; ++j)
      jamiolkowski_.matrix.block(i * dim_out, j * dim_out, dim_out, dim_out) =
          apply(basis_op(dim_in, j, i));
}

ComplexMatrix QuantumChannel::apply(const ComplexMatrix& x) const {
  if (x.rows() != dim_in_ || x.cols() != dim_in_) {
    std::ostringstream os;
    os << "apply: input is " << x.rows() << "x" << x.cols() << ", channel expects " << dim_in_
       << "x" << dim_in_;
    throw DimensionMismatch(os.str());
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_out_, dim_out_);
  for (const auto& k : kraus_) out.noalias() += k * x * k.adjoint();
  return out;
}

ComplexMatrix QuantumChannel::adjoint_apply(const ComplexMatrix& y) const {
  if (y.rows() != dim_out_ || y.cols() != dim_out_) {
    std::ostringstream os;
    os << "adjoint_apply: input is " << y.rows() << "x" << y.cols() << ", channel expects "
       << dim_out_ << "x" << dim_out_;
    throw DimensionMismatch(os.str());
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_in_, dim_in_);
  for (const auto& k : kraus_) out.noalias() += k.adjoint() * y * k;
  return out;
}

DensityOperator apply(const QuantumChannel& e, const DensityOperator& rho) {
  return DensityOperator(e.apply(rho.matrix()));
}

double jamiolkowski_duality_residual(const QuantumChannel& e, const JamiolkowskiOperator& j) {
  const int din = e.dim_in();
  const int dout = e.dim_out();
  double worst = 0.0;
  for (int i = 0; i < din; ++i)
    for (int k = 0; k < din; ++k) {
      const ComplexMatrix a = basis_op(din, i, k);
      const ComplexMatrix ea = e.apply(a);
      for (int l = 0; l < dout; ++l)
        for (int m = 0; m < dout; ++m) {
          const ComplexMatrix b = basis_op(dout, l, m);
          const Complex lhs = (j.matrix * tensor(a, b)).trace();
          const Complex rhs = (ea * b).trace();
          worst = std::max(worst, std::abs(lhs - rhs));
        }
    }
  return worst;
}

QuantumChannel channel_from_choi(const ComplexMatrix& c, BipartiteIndex idx,
                                 const ChoiConversionTolerances& tol) {
  if (c.rows() != c.cols() || c.rows() != idx.dim()) {
    throw DimensionMismatch("channel_from_choi: operator does not match bipartite index");
  }
  const HermitianOperator h(c, std::max(tol.tp, 1e-12));
  const EigenDecomposition eig = eig_hermitian(h, std::max(1e-10, tol.cp));
  const double min_eig = eig.values(0);
  if (min_eig < -tol.cp) {
    std::ostringstream os;
    os << "channel_from_choi: minimum Choi eigenvalue " << min_eig << " below -" << tol.cp;
    throw NotCompletelyPositive(os.str(), min_eig);
  }
  const double tp_res = max_abs(partial_trace(h.matrix(), idx, Subsystem::B) - identity(idx.dim_a));
  if (tp_res > tol.tp) {
    std::ostringstream os;
    os << "channel_from_choi: partial trace over output deviates from identity by " << tp_res;
    throw NotTracePreserving(os.str(), tp_res);
  }

  std::vector<ComplexMatrix> kraus;
  for (Eigen::Index n = 0; n < eig.values.size(); ++n) {
    const double lam = eig.values(n);
    if (lam <= tol.truncation) continue;
    ComplexMatrix k(idx.dim_b, idx.dim_a);
    for (int i = 0; i < idx.dim_a; ++i)
      for (int o = 0; o < idx.dim_b; ++o) k(o, i) = std::sqrt(lam) * eig.vectors(i * idx.dim_b + o, n);
    kraus.push_back(std::move(k));
  }
  Tolerances ctor_tol;
  ctor_tol.channel = std::max({tol.tp, tol.cp * static_cast<double>(idx.dim()), ctor_tol.channel});
  return QuantumChannel(idx.dim_a, idx.dim_b, std::move(kraus), ctor_tol);
}

QuantumChannel channel_from_jamiolkowski(const JamiolkowskiOperator& j,
                                         const ChoiConversionTolerances& tol) {
  return channel_from_choi(partial_transpose_a(j.matrix, j.idx), j.idx, tol);
}

double channel_distance_on_basis(const QuantumChannel& a, const QuantumChannel& b) {
  if (a.dim_in() != b.dim_in() || a.dim_out() != b.dim_out()) {
    throw DimensionMismatch("channel_distance_on_basis: channel dimensions differ");
  }
  double worst = 0.0;
  for (int i = 0; i < a.dim_in(); ++i)
    for (int j = 0; j < a.dim_in(); ++j) {
      const ComplexMatrix e = basis_op(a.dim_in(), i, j);
      worst = std::max(worst, max_abs(a.apply(e) - b.apply(e)));
    }
  return worst;
}

QuantumChannel identity_channel(int dim) { return QuantumChannel(dim, dim, {identity(dim)}); }

QuantumChannel unitary_channel(const ComplexMatrix& u) {
  require_square(u, "unitary_channel");
  const int d = static_cast<int>(u.rows());
  return QuantumChannel(d, d, {u});
}

QuantumChannel discard_and_prepare(int dim_in, const DensityOperator& sigma) {
  if (dim_in < 1) throw InvalidArgument("discard_and_prepare: dim_in must be positive");
  const int dout = sigma.dim();
  const EigenDecomposition eig = eig_hermitian(sigma.op());
  std::vector<ComplexMatrix> kraus;
  for (int k = 0; k < dout; ++k) {
    const double s = eig.values(k);
    if (s <= 0.0) continue;
    for (int i = 0; i < dim_in; ++i) {
      ComplexMatrix op = ComplexMatrix::Zero(dout, dim_in);
      op.col(i) = std::sqrt(s) * eig.vectors.col(k);
      kraus.push_back(std::move(op));
    }
  }
  return QuantumChannel(dim_in, dout, std::move(kraus));
}

QuantumChannel erasure_channel(double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw InvalidArgument("erasure_channel: lambda must lie in (0, 1)");
  }
  ComplexMatrix embed = ComplexMatrix::Zero(3, 2);
  embed(0, 0) = 1.0;
  embed(1, 1) = 1.0;
  ComplexMatrix k1 = ComplexMatrix::Zero(3, 2);
  ComplexMatrix k2 = ComplexMatrix::Zero(3, 2);
  k1(2, 0) = std::sqrt(lambda);
  k2(2, 1) = std::sqrt(lambda);
  return QuantumChannel(2, 3, {std::sqrt(1.0 - lambda) * embed, k1, k2});
}

QuantumChannel erasure_bayesian_inverse(double lambda, double p) {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw InvalidArgument("erasure_bayesian_inverse: lambda must lie in (0, 1)");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidArgument("erasure_bayesian_inverse: p must lie in [0, 1]");
  }
  ComplexMatrix restrict = ComplexMatrix::Zero(2, 3);
  restrict(0, 0) = 1.0;
  restrict(1, 1) = 1.0;
  std::vector<ComplexMatrix> kraus{restrict};
  if (p > 0.0) {
    ComplexMatrix k = ComplexMatrix::Zero(2, 3);
    k(0, 2) = std::sqrt(p);
    kraus.push_back(k);
  }
  if (p < 1.0) {
    ComplexMatrix k = ComplexMatrix::Zero(2, 3);
    k(1, 2) = std::sqrt(1.0 - p);
    kraus.push_back(k);
  }
  return QuantumChannel(3, 2, std::move(kraus));
}

}  // namespace stot
