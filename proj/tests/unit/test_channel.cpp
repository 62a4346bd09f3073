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

#include <gtest/gtest.h>

#include "stot/channel.hpp"
#include "stot/errors.hpp"
#include "stot/random.hpp"
#include "support/fixtures.hpp"

namespace stot {
namespace {

using testing::ket;
using testing::plus;

double tp_residual(const QuantumChannel& e) {
  ComplexMatrix s = ComplexMatrix::Zero(e.dim_in(), e.dim_in());
  for (const auto& k : e.kraus()) s += k.adjoint() * k;
  return max_abs(s - identity(e.dim_in()));
}

double min_choi_eigenvalue(const QuantumChannel& e) {
  return eig_hermitian(HermitianOperator(e.choi(), 1e-10)).values(0);
}

std::vector<QuantumChannel> channel_zoo() {
  std::vector<QuantumChannel> out{identity_channel(2), identity_channel(3),
                                  unitary_channel(testing::hadamard()),
                                  discard_and_prepare(3, random_state(2, 2, 4)),
                                  erasure_channel(0.25), erasure_channel(0.5),
                                  erasure_bayesian_inverse(0.5, 0.3), erasure_bayesian_inverse(0.5, 1.0)};
  for (std::uint64_t s = 0; s < 6; ++s)
    out.push_back(random_channel(2 + static_cast<int>(s % 3), 2 + static_cast<int>((s + 1) % 3),
                                 1 + static_cast<int>(s % 4), s));
  return out;
}

TEST(DensityOperator, ValidatesTraceAndPositivity) {
  EXPECT_NO_THROW(DensityOperator(identity(2) / 2.0));
  EXPECT_THROW(DensityOperator(identity(2)), ValidationError);
  EXPECT_THROW(DensityOperator(identity(2) * 0.5 + basis_op(2, 0, 0) * 1e-9), ValidationError);
  const ComplexMatrix negative = (ComplexMatrix(2, 2) << 1.1, 0, 0, -0.1).finished();
  EXPECT_THROW(DensityOperator{negative}, ValidationError);
}

TEST(ProjectiveMeasurement, ValidatesStructure) {
  EXPECT_NO_THROW(computational_pvm(3));
  EXPECT_THROW(ProjectiveMeasurement({basis_op(2, 0, 0)}), ValidationError);
  EXPECT_THROW(ProjectiveMeasurement({basis_op(2, 0, 0), outer(plus())}), ValidationError);
  EXPECT_THROW(ProjectiveMeasurement({identity(2), ComplexMatrix::Zero(2, 2)}), ValidationError);
  EXPECT_THROW(ProjectiveMeasurement({basis_op(2, 0, 0), basis_op(2, 1, 1)}, {"a", "a"}), InvalidArgument);
  const ProjectiveMeasurement m({basis_op(2, 0, 0), basis_op(2, 1, 1)}, {"up", "down"});
  EXPECT_EQ(m.index_of("down"), 1);
  EXPECT_EQ(computational_pvm(2).labels(), (std::vector<std::string>{"0", "1"}));
}

TEST(Apply, Examples) {
  const ComplexMatrix rho = random_state(3, 2, 1).matrix();
  EXPECT_LE(max_abs(stot::apply(identity_channel(3), rho) - rho), 1e-15);

  const ComplexMatrix e = stot::apply(erasure_channel(0.5), identity(2) / 2.0);
  const ComplexVector diag = (ComplexVector(3) << 0.25, 0.25, 0.5).finished();
  EXPECT_LE(max_abs(e - ComplexMatrix(diag.asDiagonal())), 1e-15);

  const DensityOperator sigma = random_state(2, 2, 2);
  const QuantumChannel dp = discard_and_prepare(3, sigma);
  EXPECT_LE(max_abs(stot::apply(dp, rho) - sigma.matrix()), 1e-14);
  EXPECT_THROW(stot::apply(dp, identity(2)), DimensionMismatch);
}

TEST(Apply, ErasureOnZeroState) {
  const ComplexMatrix out = stot::apply(erasure_channel(0.5), basis_op(2, 0, 0));
  ComplexMatrix expected = ComplexMatrix::Zero(3, 3);
  expected(0, 0) = 0.5;
  expected(2, 2) = 0.5;
  EXPECT_LE(max_abs(out - expected), 1e-15);
}

TEST(Apply, ErasureMatchesClosedFormOnRandomInputs) {
  Rng rng(21);
  for (const double lambda : {0.1, 0.25, 0.5, 0.9}) {
    const QuantumChannel e = erasure_channel(lambda);
    for (int t = 0; t < 10; ++t) {
      const ComplexMatrix w = ginibre(2, 2, rng);
      ComplexMatrix expected = ComplexMatrix::Zero(3, 3);
      expected.topLeftCorner(2, 2) = (1.0 - lambda) * w;
      expected(2, 2) = lambda * trace(w);
      EXPECT_LE(max_abs(e.apply(w) - expected), 1e-12);
    }
  }
}

TEST(AdjointApply, Examples) {
  const ComplexMatrix y = testing::pauli_y();
  EXPECT_LE(max_abs(adjoint_apply(identity_channel(2), y) - y), 0.0);
  for (const auto& e : channel_zoo()) EXPECT_LE(max_abs(e.adjoint_apply(identity(e.dim_out())) - identity(e.dim_in())), 1e-10);
  for (const double lambda : {0.25, 0.5}) {
    const QuantumChannel e = erasure_channel(lambda);
    EXPECT_LE(max_abs(e.adjoint_apply(basis_op(3, 2, 2)) - lambda * identity(2)), 1e-15);
    ComplexMatrix a = ComplexMatrix::Zero(3, 3);
    a.topLeftCorner(2, 2) = testing::pauli_x();
    EXPECT_LE(max_abs(e.adjoint_apply(a) - (1.0 - lambda) * testing::pauli_x()), 1e-15);
  }
}

TEST(AdjointApply, DualityOnRandomPairs) {
  Rng rng(22);
  for (const auto& e : channel_zoo())
    for (int t = 0; t < 20; ++t) {
      const ComplexMatrix x = ginibre(e.dim_in(), e.dim_in(), rng);
      const ComplexMatrix y = ginibre(e.dim_out(), e.dim_out(), rng);
      EXPECT_LE(std::abs(hs_inner(e.apply(x), y) - hs_inner(x, e.adjoint_apply(y))), 1e-10);
    }
}

TEST(QuantumChannel, EveryConstructedChannelIsCptp) {
  for (const auto& e : channel_zoo()) {
    EXPECT_LE(tp_residual(e), 1e-10);
    EXPECT_GE(min_choi_eigenvalue(e), -1e-10);
    const ComplexMatrix w = random_state(e.dim_in(), 1, 3).matrix();
    EXPECT_NEAR(trace(e.apply(w)).real(), 1.0, 1e-12);
  }
}

TEST(QuantumChannel, RejectsNonTracePreservingKraus) {
  EXPECT_THROW(QuantumChannel(2, 2, {0.9 * identity(2)}), NotTracePreserving);
  EXPECT_THROW(QuantumChannel(2, 2, {ComplexMatrix::Identity(3, 2)}), DimensionMismatch);
  EXPECT_THROW(QuantumChannel(2, 2, {}), InvalidArgument);
}

TEST(Jamiolkowski, IdentityGivesSwap) {
  EXPECT_LE(max_abs(jamiolkowski(identity_channel(2)).matrix - testing::swap2()), 0.0);
}

TEST(Jamiolkowski, DiscardAndPrepareIsProduct) {
  const DensityOperator sigma = random_state(3, 2, 7);
  const QuantumChannel e = discard_and_prepare(2, sigma);
  EXPECT_LE(max_abs(jamiolkowski(e).matrix - tensor(identity(2), sigma.matrix())), 1e-12);
}

TEST(Jamiolkowski, DualityOnProductBasisAndRandomOperators) {
  Rng rng(23);
  for (const auto& e : channel_zoo()) {
    const JamiolkowskiOperator& j = jamiolkowski(e);
    EXPECT_LE(jamiolkowski_duality_residual(e, j), 1e-10);
    EXPECT_LE(max_abs(partial_trace(j.matrix, j.idx, Subsystem::B) - identity(e.dim_in())), 1e-10);
    EXPECT_LE(hermiticity_residual(j.matrix), 1e-12);
    for (int t = 0; t < 5; ++t) {
      const ComplexMatrix a = ginibre(e.dim_in(), e.dim_in(), rng);
      const ComplexMatrix b = ginibre(e.dim_out(), e.dim_out(), rng);
      EXPECT_LE(std::abs(trace(j.matrix * tensor(a, b)) - trace(e.apply(a) * b)), 1e-10);
    }
  }
}

TEST(Jamiolkowski, ChoiIsPartialTransposeOnA) {
  for (const auto& e : channel_zoo())
    EXPECT_LE(max_abs(partial_transpose_a(e.jamiolkowski().matrix, e.idx()) - e.choi()), 1e-12);
}

TEST(Choi, IdentityIsTwiceBellProjector) {
  const ComplexVector phi = (tensor(ket(2, 0), ket(2, 0)) + tensor(ket(2, 1), ket(2, 1))) / std::sqrt(2.0);
  const ComplexMatrix c = choi(identity_channel(2));
  EXPECT_LE(max_abs(c - 2.0 * outer(phi)), 1e-15);
  const RealVector ev = eig_hermitian(HermitianOperator(c)).values;
  EXPECT_NEAR(ev(3), 2.0, 1e-12);
  EXPECT_LE(ev.head(3).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Choi, RoundTripAndKrausTruncation) {
  for (const auto& e : channel_zoo()) {
    const QuantumChannel back = channel_from_choi(e.choi(), e.idx());
    EXPECT_LE(channel_distance_on_basis(e, back), 1e-10);
    EXPECT_LE(static_cast<int>(back.kraus().size()), e.dim_in() * e.dim_out());
  }
  EXPECT_EQ(channel_from_choi(identity_channel(3).choi(), {3, 3}).kraus().size(), 1u);
}

TEST(Choi, ReportsCpAndTpFailures) {
  ComplexMatrix c = identity_channel(2).choi();
  c(0, 0) -= 0.5;
  c(3, 3) += 0.5;
  try {
    channel_from_choi(c, {2, 2});
    FAIL() << "expected NotCompletelyPositive";
  } catch (const NotCompletelyPositive& err) {
    EXPECT_LT(err.min_eigenvalue(), -0.1);
  }
  try {
    channel_from_choi(0.5 * identity_channel(2).choi(), {2, 2});
    FAIL() << "expected NotTracePreserving";
  } catch (const NotTracePreserving& err) {
    EXPECT_NEAR(err.residual(), 0.5, 1e-12);
  }
}

TEST(Choi, FromJamiolkowskiRoundTrip) {
  for (const auto& e : channel_zoo())
    EXPECT_LE(channel_distance_on_basis(e, channel_from_jamiolkowski(e.jamiolkowski())), 1e-10);
}

TEST(ErasureInverse, BlockAction) {
  const QuantumChannel f = erasure_bayesian_inverse(0.5, 0.5);
  EXPECT_LE(max_abs(f.apply(basis_op(3, 0, 0)) - basis_op(2, 0, 0)), 1e-15);
  EXPECT_LE(max_abs(f.apply(basis_op(3, 2, 2)) - identity(2) / 2.0), 1e-15);
  EXPECT_NEAR(trace(f.apply(basis_op(3, 2, 2))).real(), 1.0, 1e-15);
  for (int i = 0; i < 2; ++i) {
    EXPECT_LE(max_abs(f.apply(basis_op(3, i, 2))), 1e-15);
    EXPECT_LE(max_abs(f.apply(basis_op(3, 2, i))), 1e-15);
  }
  EXPECT_THROW(erasure_bayesian_inverse(0.5, 1.5), InvalidArgument);
  EXPECT_THROW(erasure_channel(0.0), InvalidArgument);
  EXPECT_THROW(erasure_channel(1.0), InvalidArgument);
}

TEST(Random, RankOneQubitChannelIsUnitary) {
  const QuantumChannel e = random_channel(2, 2, 1, 5);
  ASSERT_EQ(e.kraus().size(), 1u);
  EXPECT_LE(max_abs(e.kraus()[0].adjoint() * e.kraus()[0] - identity(2)), 1e-10);
}

TEST(Random, PvmIsOrthogonal) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const ProjectiveMeasurement m = random_pvm(3, 3, s);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (i != j) EXPECT_LE((m.projector(i) * m.projector(j)).norm(), 1e-10);
  }
  const ProjectiveMeasurement m = random_pvm(5, 2, 1);
  EXPECT_NEAR(trace(m.projector(0)).real(), 3.0, 1e-10);
  EXPECT_NEAR(trace(m.projector(1)).real(), 2.0, 1e-10);
}

TEST(Random, SameSeedIsBitIdentical) {
  EXPECT_EQ(max_abs(random_state(4, 2, 99).matrix() - random_state(4, 2, 99).matrix()), 0.0);
  EXPECT_EQ(max_abs(random_channel(3, 2, 2, 99).choi() - random_channel(3, 2, 2, 99).choi()), 0.0);
  EXPECT_EQ(max_abs(random_pvm(4, 3, 99).projector(2) - random_pvm(4, 3, 99).projector(2)), 0.0);
  EXPECT_GT(max_abs(random_state(4, 2, 99).matrix() - random_state(4, 2, 98).matrix()), 0.0);
}

TEST(Random, InfeasibleParametersThrow) {
  EXPECT_THROW(random_channel(4, 2, 1, 0), InvalidArgument);
  EXPECT_THROW(random_pvm(2, 3, 0), InvalidArgument);
  EXPECT_THROW(random_state(2, 0, 0), InvalidArgument);
}

}  // namespace
}  // namespace stot
