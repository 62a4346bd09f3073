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

namespace stot {

/// All random instances are drawn from this engine; outputs are a pure function
/// of the seed.
using Rng = std::mt19937_64;

/// i.i.d. standard complex Gaussian entries.
ComplexMatrix ginibre(int rows, int cols, Rng& rng);
/// Haar-distributed isometry (rows ≥ cols) via phase-corrected QR.
ComplexMatrix haar_isometry(int rows, int cols, Rng& rng);
ComplexMatrix haar_unitary(int dim, Rng& rng);
/// Projector onto a Haar-random subspace of the given rank.
ComplexMatrix random_projector(int dim, int rank, Rng& rng);

/// Stinespring channel from a Haar-random isometry C^in → C^out ⊗ C^rank.
QuantumChannel random_channel(int dim_in, int dim_out, int kraus_rank, std::uint64_t seed);
/// Normalized Wishart state G G† / Tr with G of shape dim × rank.
DensityOperator random_state(int dim, int rank, std::uint64_t seed);
/// Columns of a Haar unitary grouped contiguously into `num_outcomes` blocks;
/// the first dim % num_outcomes blocks receive one extra column.
ProjectiveMeasurement random_pvm(int dim, int num_outcomes, std::uint64_t seed);

}  // namespace stot
