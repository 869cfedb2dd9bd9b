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

// Built-in constructions: small, fixed instances of every demonstration the
// library is meant to reproduce. All constructors are deterministic.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "branchlab/axioms.hpp"
#include "branchlab/decision.hpp"
#include "branchlab/histories.hpp"

namespace branchlab {

/// System (dim n) x device (dim n). The first step entangles,
/// |i, d> -> |i, d + i mod n>; later steps are the identity. Every time
/// records the system basis. Weights |c_i|^2 / sum |c|^2.
HistorySpace build_measurement_model(const std::vector<Complex>& coeffs, std::size_t times = 1);

struct RecombiningDemo {
  HistorySpace fine;    // record at t1, Hadamard, record at t2
  HistorySpace coarse;  // same, with nothing recorded at t1
  CellMapping mapping;  // fine -> coarse
};

/// Two-level recombination: inconsistent, not branching, not additive.
RecombiningDemo build_recombining_space();

/// Consistent but not branching: a record register keeps the two paths
/// orthogonal although the recorded system recombines.
HistorySpace build_recorded_recombination();

struct AlgebraFailureDemo {
  HistorySpace hs;
  EventAlgebra algebra;  // standard-basis lines; finer than the sample space
};

/// Consistent space whose rank-one branch lines are not members of the
/// algebra the histories were drawn from.
AlgebraFailureDemo build_algebra_failure();

struct AbcBets {
  DecisionProblem dp;
  StateVector ready;  // unit state in the "ready" macrostate
  BlockSet ready_member;
  Strategy utilities;  // born_eu with linear cash utilities
  DiachronicScenario diachronic;  // B then {1, A on the down branch}
};

/// Bets on an equal-weight up/down measurement: A pays +1000 / -100, B pays
/// +1000 / 0, C is B followed by A in the down branch. "split" is a
/// within-reward branching act available in the down branch.
AbcBets build_abc_bets();

struct ErasureDemo {
  DecisionProblem dp;
  StateVector psi;
  StateVector phi;
  Act u;
  Act v;
  LiftResult lift;
  double inner_before = 0.0;  // |<psi, phi>|
  double inner_after = 0.0;   // |<U psi, V phi>|
};

/// Dim 3: macrostates M = span e0, N = span e1, E = span e2, one reward.
/// U psi = V phi = e2 by default. `separation` > 0 moves V's target that far
/// from U's; `distinct_targets` sends V to an orthogonal target instead.
ErasureDemo build_erasure_contradiction(double separation = 0.0, bool distinct_targets = false);

struct RewardAvailabilityDemo {
  DecisionProblem dp;
  std::vector<std::size_t> sources;
  std::vector<std::size_t> targets;
  RewardSearchResult result;
};

/// Dim 8, four rank-2 macrostates, all sent to one rank-4 reward. With
/// `whole_space_reward` the single reward is the full space instead.
RewardAvailabilityDemo build_reward_availability_contradiction(bool whole_space_reward = false);

struct SpreadingTail {
  DecisionProblem dp;  // one-cell macrostates, one reward
  Matrix step;         // exp(-i dt L), L the cyclic second difference
  double dt = 0.0;
  std::size_t start_cell = 0;
  std::size_t steps = 0;
  Act act;  // step^steps on the start cell
  StateVector final_state;
  std::vector<double> cell_weights;
  BlockSet smallest;  // O_U
};

constexpr double kSpreadingStep = 0.7;

/// 2 <= n <= 64. Throws Error(out_of_range).
SpreadingTail build_spreading_tail(std::size_t n, std::size_t steps, double dt = kSpreadingStep);

struct PointerDecomposition {
  std::size_t n = 0;
  double sigma = 0.0;
  double shift = 0.0;
  Matrix frame_a;  // column c: pointer centred at c
  Matrix frame_b;  // column c: pointer centred at c + shift
  StateVector psi;
  std::vector<StateVector> parts_a;
  std::vector<StateVector> parts_b;
  double residual_a = 0.0;
  double residual_b = 0.0;
  Matrix cross;             // |<psi_i, phi_j>|
  double deviation = 0.0;   // distance of `cross` from any permutation pattern
  double condition_a = 0.0;
  double condition_b = 0.0;
};

/// Unit pointer profile exp(-(d / sigma)^2), d the cyclic distance to centre.
StateVector pointer_state(std::size_t n, double sigma, double centre);

/// Two decompositions of one state over pointer frames offset by `shift`.
/// Throws Error(degenerate_frame) when a frame's Gram condition number on its
/// range exceeds 1e8.
PointerDecomposition build_pointer_decompositions(std::size_t n, double sigma, double shift = 0.5);

/// Smallest t such that entries of m above t have at most one per row and
/// column, i.e. the max-entry distance from the nearest matrix supported on
/// a permutation.
double permutation_deviation(const Matrix& m);

struct GeneratedProblem {
  DecisionProblem dp;
  Strategy strategy;  // born_eu with distinct random utilities
};

/// Random decision problems with identity, within-reward, branching and
/// general acts on macrostates, and continuations on every O_U.
std::vector<GeneratedProblem> generate_decision_suite(std::uint64_t seed, std::size_t count = 12);

}  // namespace branchlab
