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
#include <random>

#include "stot/channel.hpp"
#include "stot/distributions.hpp"
#include "stot/random.hpp"

namespace stot::testing {

inline ComplexMatrix pauli_x() { return (ComplexMatrix(2, 2) << 0, 1, 1, 0).finished(); }
inline ComplexMatrix pauli_y() {
  return (ComplexMatrix(2, 2) << 0, Complex(0, -1), Complex(0, 1), 0).finished();
}
inline ComplexMatrix pauli_z() { return (ComplexMatrix(2, 2) << 1, 0, 0, -1).finished(); }
inline ComplexMatrix hadamard() {
  return (ComplexMatrix(2, 2) << 1, 1, 1, -1).finished() / std::sqrt(2.0);
}

inline ComplexVector ket(int dim, int i) { return ComplexVector::Unit(dim, i); }
inline ComplexVector plus() { return (ket(2, 0) + ket(2, 1)) / std::sqrt(2.0); }
inline ComplexVector minus() { return (ket(2, 0) - ket(2, 1)) / std::sqrt(2.0); }

/// {|+⟩⟨+|, |−⟩⟨−|} labelled "+" and "-".
inline ProjectiveMeasurement plus_minus_pvm() {
  return ProjectiveMeasurement({outer(plus()), outer(minus())}, {"+", "-"});
}

inline ComplexMatrix swap2() { return swap_operator({2, 2}); }

/// Dimensions in {2, 3, 4}, mixed ranks and outcome counts, all drawn from `seed`.
inline TPSMScenario random_scenario(std::uint64_t seed) {
  Rng rng(seed);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int da = pick(2, 4);
  const int db = pick(2, 4);
  const int state_rank = pick(1, da);
  const int kraus_rank = pick((da + db - 1) / db, da * db);
  const std::uint64_t s = rng();
  return TPSMScenario(random_state(da, state_rank, s), random_pvm(da, pick(1, da), s + 1),
                      random_channel(da, db, kraus_rank, s + 2), random_pvm(db, pick(1, db), s + 3));
}

/// Random Hermitian matrix with i.i.d. Gaussian entries.
inline ComplexMatrix random_hermitian(int dim, Rng& rng) {
  const ComplexMatrix g = ginibre(dim, dim, rng);
  return (g + g.adjoint()) * 0.5;
}

}  // namespace stot::testing
