// Copyright 2026 The branchlab Authors
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

// Seeded sampling of states, unitaries and Hermitian generators. All
// randomness in the library goes through an Rng passed in by the caller.

#pragma once

#include <cstdint>
#include <random>

#include "branchlab/hilbert.hpp"

namespace branchlab {

using Rng = std::mt19937_64;

constexpr std::uint64_t kDefaultSeed = 20170829;

/// Haar-random unit vector in C^dim.
StateVector random_state(Index dim, Rng& rng);
/// Haar-random unit vector inside a nonzero event.
StateVector random_state_in(const Event& e, Rng& rng);
/// Haar-random unitary (QR of a complex Ginibre matrix, phases fixed).
Matrix random_unitary(Index dim, Rng& rng);
/// GUE-like Hermitian matrix scaled to operator norm 1.
Matrix random_hermitian(Index dim, Rng& rng);
/// Uniform double in [lo, hi).
double uniform(Rng& rng, double lo = 0.0, double hi = 1.0);
/// Uniform integer in [lo, hi].
std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi);

}  // namespace branchlab
