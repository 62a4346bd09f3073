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

#include "stot/operator.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "stot/errors.hpp"

namespace stot {

namespace {

std::string dims_of(const ComplexMatrix& m) {
  std::ostringstream os;
  os << m.rows() << "x" << m.cols();
  return os.str();
}

void require_same_square(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw DimensionMismatch(std::string(what) + ": expected equal square matrices, got " +
                            dims_of(a) + " and " + dims_of(b));
  }
}

void require_bipartite(const ComplexMatrix& m, BipartiteIndex idx, const char* what) {
  if (idx.dim_a < 1 || idx.dim_b < 1) {
    throw InvalidArgument(std::string(what) + ": factor dimensions must be positive");
  }
  if (m.rows() != m.cols() || m.rows() != idx.dim()) {
    std::ostringstream os;
    os << what << ": matrix " << dims_of(m) << " does not match " << idx.dim_a << "x"
       << idx.dim_b << " bipartite index";
    throw DimensionMismatch(os.str());
  }
}

}  // namespace

void require_finite(const ComplexMatrix& m, const char* what) {
  if (!m.allFinite()) {
    throw ValidationError(std::string(what) + ": matrix has non-finite entries",
                          std::numeric_limits<double>::infinity());
  }
}

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DimensionMismatch(std::string(what) + ": expected non-empty square matrix, got " +
                            dims_of(m));
  }
}

HermitianOperator::HermitianOperator(const ComplexMatrix& m, double hermiticity_tol) {
  require_square(m, "HermitianOperator");
  require_finite(m, "HermitianOperator");
  const double r = hermiticity_residual(m);
  if (r > hermiticity_tol) {
    std::ostringstream os;
    os << "HermitianOperator: hermiticity residual " << r << " exceeds tolerance "
       << hermiticity_tol;
    throw ValidationError(os.str(), r);
  }
  matrix_ = (m + m.adjoint()) * 0.5;
}

ComplexMatrix identity(int dim) { return ComplexMatrix::Identity(dim, dim); }

ComplexMatrix basis_op(int dim, int i, int j) {
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  m(i, j) = 1.0;
  return m;
}

ComplexMatrix outer(const ComplexVector& v) { return v * v.adjoint(); }

Complex trace(const ComplexMatrix& m) { return m.trace(); }

double hermiticity_residual(const ComplexMatrix& m) {
  return max_abs(m - m.adjoint());
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, BipartiteIndex idx, Subsystem which) {
  require_bipartite(m, idx, "partial_trace");
  const int da = idx.dim_a;
  const int db = idx.dim_b;
  if (which == Subsystem::B) {
    ComplexMatrix out = ComplexMatrix::Zero(da, da);
    for (int i = 0; i < da; ++i)
      for (int j = 0; j < da; ++j)
        for (int k = 0; k < db; ++k) out(i, j) += m(idx.flat(i, k), idx.flat(j, k));
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(db, db);
  for (int k = 0; k < da; ++k) out += m.block(k * db, k * db, db, db);
  return out;
}

ComplexMatrix partial_transpose_a(const ComplexMatrix& m, BipartiteIndex idx) {
  require_bipartite(m, idx, "partial_transpose_a");
  const int db = idx.dim_b;
  ComplexMatrix out(m.rows(), m.cols());
  for (int i = 0; i < idx.dim_a; ++i)
    for (int j = 0; j < idx.dim_a; ++j)
      out.block(j * db, i * db, db, db) = m.block(i * db, j * db, db, db);
  return out;
}

ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_square(a, b, "anticommutator");
  return a * b + b * a;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_square(a, b, "commutator");
  return a * b - b * a;
}

ComplexMatrix swap_conjugate(const ComplexMatrix& m, BipartiteIndex idx) {
  require_bipartite(m, idx, "swap_conjugate");
  const BipartiteIndex out_idx = idx.swapped();
  ComplexMatrix out(m.rows(), m.cols());
  for (int ia = 0; ia < idx.dim_a; ++ia)
    for (int ib = 0; ib < idx.dim_b; ++ib)
      for (int ja = 0; ja < idx.dim_a; ++ja)
        for (int jb = 0; jb < idx.dim_b; ++jb)
          out(out_idx.flat(ib, ia), out_idx.flat(jb, ja)) = m(idx.flat(ia, ib), idx.flat(ja, jb));
  return out;
}

ComplexMatrix swap_operator(BipartiteIndex idx) {
  const BipartiteIndex out_idx = idx.swapped();
  ComplexMatrix s = ComplexMatrix::Zero(idx.dim(), idx.dim());
  for (int ia = 0; ia < idx.dim_a; ++ia)
    for (int ib = 0; ib < idx.dim_b; ++ib) s(out_idx.flat(ib, ia), idx.flat(ia, ib)) = 1.0;
  return s;
}

EigenDecomposition eig_hermitian(const HermitianOperator& h, double spectral_tol) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) {
    std::ostringstream os;
    os << "eig_hermitian: solver did not converge on " << h.dim() << "x" << h.dim()
       << " input (max |entry| " << max_abs(h.matrix()) << ")";
    throw ConvergenceFailure(os.str());
  }
  EigenDecomposition out{solver.eigenvalues(), solver.eigenvectors()};
  const double residual =
      (out.vectors * out.values.cast<Complex>().asDiagonal() * out.vectors.adjoint() - h.matrix())
          .norm();
  if (!(residual <= spectral_tol)) {
    std::ostringstream os;
    os << "eig_hermitian: reconstruction residual " << residual << " exceeds " << spectral_tol;
    throw ConvergenceFailure(os.str());
  }
  return out;
}

Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_square(a, b, "hs_inner");
  return (a.adjoint() * b).trace();
}

}  // namespace stot
