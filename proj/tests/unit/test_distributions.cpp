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

#include "stot/distributions.hpp"
#include "stot/errors.hpp"
#include "stot/state_over_time.hpp"
#include "support/fixtures.hpp"

namespace stot {
namespace {

using testing::ket;
using testing::plus_minus_pvm;
using testing::random_scenario;

TPSMScenario pure_identity_scenario() {
  return TPSMScenario(pure_state(ket(2, 0)), plus_minus_pvm(), identity_channel(2), computational_pvm(2));
}

TEST(Scenario, RejectsBrokenDimensionChain) {
  EXPECT_THROW(TPSMScenario(maximally_mixed(2), computational_pvm(3), identity_channel(2), computational_pvm(2)),
               DimensionMismatch);
  EXPECT_THROW(TPSMScenario(maximally_mixed(2), computational_pvm(2), erasure_channel(0.5), computational_pvm(2)),
               DimensionMismatch);
}

TEST(Distributions, PureIdentityExample) {
  const TPSMScenario s = pure_identity_scenario();
  const auto p = lvn_distribution(s);
  const auto q = mh_distribution(s);
  const auto d = disturbance_term(s);
  EXPECT_NEAR(p.values(0, 0), 0.25, 1e-15);
  EXPECT_NEAR(q.values(0, 0), 0.5, 1e-15);
  EXPECT_NEAR(d.values(0, 0), 0.25, 1e-15);
  EXPECT_NEAR(d.values(0, 0), q.values(0, 0) - p.values(0, 0), 1e-15);
  EXPECT_EQ(p.row_labels, (std::vector<std::string>{"+", "-"}));
  EXPECT_EQ(q.col_labels, (std::vector<std::string>{"0", "1"}));
  EXPECT_EQ(p.kind, DistributionKind::LVN);
  EXPECT_EQ(q.kind, DistributionKind::MH);
  EXPECT_EQ(d.kind, DistributionKind::Disturbance);
}

TEST(Distributions, LvnCommutingCase) {
  const ComplexVector diag = (ComplexVector(3) << 0.5, 0.3, 0.2).finished();
  const DensityOperator rho{ComplexMatrix(diag.asDiagonal())};
  const auto p = lvn_distribution(TPSMScenario(rho, computational_pvm(3), identity_channel(3), computational_pvm(3)));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(p.values(i, j), i == j ? diag(i).real() : 0.0, 1e-15);
}

TEST(Distributions, LvnDiscardAndPrepareFactorizes) {
  const DensityOperator rho = random_state(3, 2, 1);
  const DensityOperator sigma = random_state(2, 2, 2);
  const ProjectiveMeasurement pa = random_pvm(3, 2, 3);
  const ProjectiveMeasurement pb = random_pvm(2, 2, 4);
  const auto p = lvn_distribution(TPSMScenario(rho, pa, discard_and_prepare(3, sigma), pb));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      EXPECT_NEAR(p.values(i, j),
                  trace(rho.matrix() * pa.projector(i)).real() * trace(sigma.matrix() * pb.projector(j)).real(),
                  1e-12);
}

TEST(Distributions, MaximallyMixedGivesEqualTables) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const TPSMScenario r = random_scenario(seed);
    const TPSMScenario s(maximally_mixed(r.rho().dim()), r.pvm_a(), r.channel(), r.pvm_b());
    EXPECT_LE(max_abs(mh_distribution(s).values - lvn_distribution(s).values), 1e-12);
    EXPECT_LE(max_abs(disturbance_term(s).values), 1e-10);
  }
}

TEST(Distributions, HalfSwapComputational) {
  const auto q = mh_distribution(
      TPSMScenario(maximally_mixed(2), computational_pvm(2), identity_channel(2), computational_pvm(2)));
  EXPECT_LE(max_abs(q.values - RealMatrix::Identity(2, 2) / 2.0), 1e-15);
}

TEST(Distributions, CommutingStateAndProjectorsGiveNoDisturbance) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int d = 2 + static_cast<int>(seed % 3);
    Rng rng(seed);
    const ComplexMatrix u = haar_unitary(d, rng);
    RealVector w(d);
    for (int k = 0; k < d; ++k) w(k) = 0.1 + std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    w /= w.sum();
    const DensityOperator rho{ComplexMatrix(u * w.cast<Complex>().asDiagonal() * u.adjoint())};
    const ProjectiveMeasurement pa = pvm_from_basis(u);
    const TPSMScenario s(rho, pa, random_channel(d, 3, 2, seed), random_pvm(3, 2, seed));
    EXPECT_LE(max_abs(disturbance_term(s).values), 1e-10);
  }
}

TEST(Distributions, CommutingWithAdjointImageGivesNoDisturbance) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const ComplexMatrix u = haar_unitary(3, rng);
    const QuantumChannel e = unitary_channel(u);
    // ℰ*(U P U†) = P, which commutes with every computational projector.
    std::vector<ComplexMatrix> qs;
    for (int j = 0; j < 3; ++j) qs.push_back(u * basis_op(3, j, j) * u.adjoint());
    const TPSMScenario s(random_state(3, 3, seed), computational_pvm(3), e, ProjectiveMeasurement(qs));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        EXPECT_LE(max_abs(commutator(s.pvm_a().projector(i), e.adjoint_apply(qs[j]))), 1e-10);
    EXPECT_LE(max_abs(disturbance_term(s).values), 1e-10);
  }
}

TEST(Distributions, RandomScenarioIdentitiesAndMarginals) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const TPSMScenario s = random_scenario(seed);
    const auto p = lvn_distribution(s);
    const auto q = mh_distribution(s);
    const auto d = disturbance_term(s);
    EXPECT_NO_THROW(validate(p));
    EXPECT_NO_THROW(validate(q));
    EXPECT_NO_THROW(validate(d));
    EXPECT_LE(max_abs(q.values - p.values - d.values), 1e-10);
    EXPECT_LE(max_abs(d.values - disturbance_from_expectations(s)), 1e-12);
    const ComplexMatrix out = s.channel().apply(s.rho().matrix());
    for (int i = 0; i < q.rows(); ++i) {
      const double tr = trace(s.rho().matrix() * s.pvm_a().projector(i)).real();
      EXPECT_NEAR(q.row_marginal()(i), tr, 1e-10);
      EXPECT_NEAR(p.row_marginal()(i), tr, 1e-10);
    }
    for (int j = 0; j < q.cols(); ++j)
      EXPECT_NEAR(q.col_marginal()(j), trace(out * s.pvm_b().projector(j)).real(), 1e-10);
    EXPECT_GE(p.values.minCoeff(), -1e-12);
    if (q.values.minCoeff() < -1e-10) EXPECT_GT(max_abs(d.values), 1e-10);
  }
}

TEST(BornEvaluate, AgreesWithMargenauHill) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const TPSMScenario s = random_scenario(seed);
    const auto born = born_evaluate(s, state_over_time(s.rho(), s.channel()));
    EXPECT_LE(max_abs(born.values - mh_distribution(s).values), 1e-10);
  }
}

TEST(BornEvaluate, DiscardAndPrepareEntriesAreProbabilities) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const TPSMScenario s(random_state(3, 3, seed), random_pvm(3, 3, seed),
                         discard_and_prepare(3, random_state(2, 1, seed + 1)), random_pvm(2, 2, seed));
    const auto born = born_evaluate(s, state_over_time(s.rho(), s.channel()));
    EXPECT_GE(born.values.minCoeff(), -1e-12);
    EXPECT_NEAR(born.total(), 1.0, 1e-12);
  }
}

TEST(BornEvaluate, ErasureClosedForm) {
  const double lambda = 0.5;
  const double p = 0.25;
  const ComplexMatrix rho = (ComplexMatrix(2, 2) << p, 0, 0, 1 - p).finished();
  const TPSMScenario s(DensityOperator(rho), plus_minus_pvm(), erasure_channel(lambda), random_pvm(3, 3, 8));
  ComplexMatrix closed = lambda * tensor(rho, basis_op(3, 2, 2));
  const double a[2] = {p, 1 - p};
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l)
      closed += (1 - lambda) * (a[k] + a[l]) / 2 * tensor(basis_op(2, k, l), basis_op(3, l, k));
  EXPECT_LE(max_abs(born_evaluate(s, closed).values - born_evaluate(s, state_over_time(s.rho(), s.channel())).values),
            1e-12);
  EXPECT_THROW(born_evaluate(s, identity(4)), DimensionMismatch);
}

TEST(CoarseGrain, MargenauHillCommutes) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const TPSMScenario s(random_state(3, 2, seed), random_pvm(3, 3, seed + 1), random_channel(3, 3, 2, seed + 2),
                         random_pvm(3, 2, seed + 3));
    const CoarseGrainComparison c = compare_coarse_graining(s, {{"0", "1"}, {"2"}}, DistributionKind::MH);
    EXPECT_LE(c.max_deviation, 1e-10);
    EXPECT_EQ(c.merged_distribution.row_labels, (std::vector<std::string>{"0+1", "2"}));
  }
}

TEST(CoarseGrain, LvnNonAdditivityWitness) {
  const ComplexVector psi = (ComplexVector(3) << 1, 1, 0).finished() / std::sqrt(2.0);
  const ComplexVector plus01 = psi;
  const TPSMScenario s(pure_state(psi), computational_pvm(3), identity_channel(3),
                       ProjectiveMeasurement({outer(plus01), identity(3) - outer(plus01)}));
  const CoarseGrainComparison c = compare_coarse_graining(s, {{"0", "1"}, {"2"}}, DistributionKind::LVN);
  EXPECT_NEAR(c.merged_distribution.values(0, 0), 0.5, 1e-12);
  EXPECT_NEAR(c.distribution_of_merged.values(0, 0), 1.0, 1e-12);
  EXPECT_GE(c.max_deviation, 0.1);
  EXPECT_NEAR(c.max_deviation, 0.5, 1e-12);
}

TEST(CoarseGrain, FullMergeGivesOutputMarginal) {
  const TPSMScenario s = random_scenario(77);
  OutcomePartition all(1);
  for (const auto& l : s.pvm_a().labels()) all[0].push_back(l);
  const auto merged = coarse_grain(mh_distribution(s), all);
  const ComplexMatrix out = s.channel().apply(s.rho().matrix());
  ASSERT_EQ(merged.rows(), 1);
  for (int j = 0; j < merged.cols(); ++j)
    EXPECT_NEAR(merged.values(0, j), trace(out * s.pvm_b().projector(j)).real(), 1e-10);
}

TEST(CoarseGrain, RejectsInvalidPartitions) {
  const auto q = mh_distribution(TPSMScenario(maximally_mixed(3), computational_pvm(3), identity_channel(3),
                                              computational_pvm(3)));
  EXPECT_THROW(coarse_grain(q, {{"0", "1"}}), InvalidArgument);
  EXPECT_THROW(coarse_grain(q, {{"0", "1"}, {"1", "2"}}), InvalidArgument);
  EXPECT_THROW(coarse_grain(q, {{"0", "1"}, {"2", "7"}}), InvalidArgument);
  EXPECT_THROW(coarse_grain(q, {{"0", "1", "2"}, {}}), InvalidArgument);
}

TEST(TwoTimeExpectation, Examples) {
  const TPSMScenario s(random_state(2, 2, 3), plus_minus_pvm(), random_channel(2, 3, 2, 4), computational_pvm(3));
  const double expected = trace(s.rho().matrix() * s.pvm_a().projector(0)).real() -
                          trace(s.rho().matrix() * s.pvm_a().projector(1)).real();
  EXPECT_NEAR(two_time_expectation(s, HermitianOperator(identity(3))), expected, 1e-12);

  const TPSMScenario z(maximally_mixed(2), computational_pvm(2), identity_channel(2), computational_pvm(2));
  EXPECT_NEAR(two_time_expectation(z, HermitianOperator(testing::pauli_z())), 1.0, 1e-15);

  const TPSMScenario three(maximally_mixed(3), computational_pvm(3), identity_channel(3), computational_pvm(3));
  EXPECT_THROW(two_time_expectation(three, HermitianOperator(identity(3))), InvalidArgument);
}

TEST(TwoTimeExpectation, MatchesStateOverTime) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    const int da = 2 + static_cast<int>(seed % 3);
    const int db = 2 + static_cast<int>((seed / 3) % 3);
    const TPSMScenario s(random_state(da, da, seed), random_pvm(da, 2, seed + 1), random_channel(da, db, da, seed + 2),
                         computational_pvm(db));
    const HermitianOperator ob(testing::random_hermitian(db, rng));
    const ComplexMatrix oa = s.pvm_a().projector(0) - s.pvm_a().projector(1);
    const ComplexMatrix varrho = state_over_time_matrix(s.rho().matrix(), s.channel());
    EXPECT_NEAR(two_time_expectation(s, ob), trace(varrho * tensor(oa, ob.matrix())).real(), 1e-10);
  }
}

TEST(Validate, FlagsBrokenTables) {
  JointQuasiDistribution d = lvn_distribution(pure_identity_scenario());
  d.values(0, 0) -= 1e-6;
  d.values(0, 1) += 1e-6;
  EXPECT_NO_THROW(validate(d));
  d.values(0, 0) = -1e-9;
  EXPECT_THROW(validate(d), ValidationError);
  JointQuasiDistribution q = mh_distribution(pure_identity_scenario());
  q.values(1, 1) += 1e-6;
  EXPECT_THROW(validate(q), ValidationError);
}

TEST(Labels, KindNames) {
  EXPECT_STREQ(to_string(DistributionKind::LVN), "LVN");
  EXPECT_STREQ(to_string(DistributionKind::MH), "MH");
  EXPECT_STREQ(to_string(DistributionKind::Disturbance), "DISTURBANCE");
  EXPECT_STREQ(to_string(DistributionKind::ReversedMH), "REVERSED_MH");
}

}  // namespace
}  // namespace stot
