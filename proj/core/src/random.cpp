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

#include "stot/random.hpp"

#include <cmath>
#include <vector>

#include "stot/errors.hpp"

namespace stot {

ComplexMatrix ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  // Column-major fill order is part of the determinism contract.
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im) / std::sqrt(2.0);
    }
  return g;
}

ComplexMatrix haar_isometry(int rows, int cols, Rng& rng) {
  if (rows < cols || cols < 1) throw InvalidArgument("haar_isometry: need rows >= cols >= 1");
  const ComplexMatrix g = ginibre(rows, cols, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(rows, cols);
  const ComplexMatrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  for (int k = 0; k < cols; ++k) {
    const Complex d = r(k, k);
    const double a = std::abs(d);
    if (a > 0.0) q.col(k) *= d / a;
  }
  return q;
}

ComplexMatrix haar_unitary(int dim, Rng& rng) { return haar_isometry(dim, dim, rng); }

ComplexMatrix random_projector(int dim, int rank, Rng& rng) {
  if (rank < 1 || rank > dim) throw InvalidArgument("random_projector: need 1 <= rank <= dim");
  const ComplexMatrix v = haar_isometry(dim, rank, rng);
  return v * v.adjoint();
}

QuantumChannel random_channel(int dim_in, int dim_out, int kraus_rank, std::uint64_t seed) {
  if (dim_in < 1 || dim_out < 1 || kraus_rank < 1) {
    throw InvalidArgument("random_channel: dimensions and Kraus rank must be positive");
  }
  if (dim_out * kraus_rank < dim_in) {
    throw InvalidArgument("random_channel: dim_out * kraus_rank must be at least dim_in");
  }
  Rng rng(seed);
  const ComplexMatrix v = haar_isometry(dim_out * kraus_rank, dim_in, rng);
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(kraus_rank);
  for (int k = 0; k < kraus_rank; ++k) kraus.push_back(v.block(k * dim_out, 0, dim_out, dim_in));
  return QuantumChannel(dim_in, dim_out, std::move(kraus));
}

DensityOperator random_state(int dim, int rank, std::uint64_t seed) {
  if (dim < 1 || rank < 1 || rank > dim) {
    throw InvalidArgument("random_state: need 1 <= rank <= dim");
  }
  Rng rng(seed);
  const ComplexMatrix g = ginibre(dim, rank, rng);
  ComplexMatrix w = g * g.adjoint();
  w /= w.trace().real();
  return DensityOperator((w + w.adjoint()) * 0.5);
}

ProjectiveMeasurement random_pvm(int dim, int num_outcomes, std::uint64_t seed) {
  if (num_outcomes < 1 || num_outcomes > dim) {
    throw InvalidArgument("random_pvm: need 1 <= num_outcomes <= dim");
  }
  Rng rng(seed);
  const ComplexMatrix u = haar_unitary(dim, rng);
  const int base = dim / num_outcomes;
  const int extra = dim % num_outcomes;
  std::vector<ComplexMatrix> ps;
  int col = 0;
  for (int g = 0; g < num_outcomes; ++g) {
    const int width = base + (g < extra ? 1 : 0);
    const ComplexMatrix block = u.middleCols(col, width);
    ps.push_back(block * block.adjoint());
    col += width;
  }
  return ProjectiveMeasurement(ps);
}

}  // namespace stot
