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

// Valuation strategies and checkers for the rationality axioms.
//
// A strategy turns (state, act) into a real value; preferences are read off
// values, with |difference| <= kIndifference meaning indifference. Checkers
// never throw on a violated axiom: violations come back as witnesses.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "branchlab/decision.hpp"

namespace branchlab {

constexpr double kIndifference = 1e-9;

enum class StrategyKind { born_eu, counting_eu, coarse_count_eu, minimax };

std::string_view to_string(StrategyKind k);
/// Throws Error(invalid_argument) for unknown names.
StrategyKind strategy_from_string(std::string_view name);

struct Strategy {
  StrategyKind kind = StrategyKind::born_eu;
  std::map<std::string, double> utilities;  // reward label -> utility
  /// Branch-presence threshold on ||Pi_M U psi|| / ||psi|| (counting, minimax,
  /// coarse counting).
  double threshold = 1e-6;
  /// coarse_count_eu: macrostate label -> grain cell label. Unlisted
  /// macrostates are their own cells.
  std::map<std::string, std::string> grain;
  /// Subtracted from the value of an act with this label. Lets tests build
  /// strategies that care about the process, not just the outcome.
  std::map<std::string, double> act_costs;

  std::string name() const { return std::string(to_string(kind)); }
  double max_abs_utility() const;
};

/// Value of act U at psi. Throws Error(state_outside_domain) and
/// Error(invalid_argument) for utilities missing a reward.
double evaluate(const Strategy& s, const DecisionProblem& dp, const StateVector& psi, const Act& u,
                const Tolerances& tol = {});

/// Weak preference pairs (a, b) meaning a >= b.
struct PreferenceOrder {
  std::vector<std::string> acts;
  std::vector<std::pair<std::string, std::string>> weak;

  static PreferenceOrder from_values(const std::vector<std::pair<std::string, double>>& values);
};

struct AxiomReport {
  std::string axiom;
  std::string strategy;
  bool pass = true;
  std::vector<std::string> witnesses;
  std::map<std::string, double> numerics;
  std::size_t checked = 0;  // number of instances examined
};

AxiomReport check_ordering(const PreferenceOrder& po);

struct SamplingOptions {
  std::uint64_t seed = 20170829;
  std::size_t samples = 4;  // random states per act set
};

AxiomReport check_state_supervenience(const DecisionProblem& dp, const Strategy& s,
                                      const SamplingOptions& opts = {}, const Tolerances& tol = {});

struct DiachronicScenario {
  BlockSet member;  // E with psi in E
  StateVector psi;
  Act u;
  /// Partition of O_U into members; empty = the atoms of O_U.
  std::vector<BlockSet> parts;
  /// Acts on O_U compared pairwise; empty = the problem's acts on O_U.
  std::vector<Act> continuations;
};

AxiomReport check_diachronic_consistency(const DecisionProblem& dp, const Strategy& s,
                                         const DiachronicScenario& sc, const Tolerances& tol = {});
/// Every act, sampled states, default parts and continuations.
AxiomReport check_diachronic_consistency(const DecisionProblem& dp, const Strategy& s,
                                         const SamplingOptions& opts = {}, const Tolerances& tol = {});

/// Direct form: U ~ 1_M whenever U psi stays in M's reward. Composite form:
/// an act W followed by a within-reward act on one macrostate of O_W (and
/// the identity elsewhere) must be indifferent to W alone.
AxiomReport check_branching_indifference(const DecisionProblem& dp, const Strategy& s,
                                         const SamplingOptions& opts = {}, const Tolerances& tol = {});

struct ContinuityOptions {
  std::uint64_t seed = 20170829;
  std::size_t perturbations = 16;
  double delta = 1e-4;
};

/// U' = exp(i s H) U with s tuned so ||U' - U|| = delta; likewise V'.
/// numerics: gap, min_gap, bound (= 4 delta max|u|), stable (0/1).
AxiomReport check_solution_continuity(const DecisionProblem& dp, const Strategy& s, const StateVector& psi,
                                      const Act& u, const Act& v, const ContinuityOptions& opts = {},
                                      const Tolerances& tol = {});
/// All strictly ordered pairs of every act set at sampled states. Passes
/// unless a pair whose gap exceeds the bound loses its direction.
AxiomReport check_solution_continuity(const DecisionProblem& dp, const Strategy& s,
                                      const SamplingOptions& sampling, const ContinuityOptions& opts,
                                      const Tolerances& tol = {});

/// Passes iff some act set holds a strict preference. `states` are tried
/// first, then sampled ones.
AxiomReport check_act_nondegeneracy(const DecisionProblem& dp, const Strategy& s,
                                    const std::vector<StateVector>& states = {},
                                    const SamplingOptions& opts = {}, const Tolerances& tol = {});

struct MacrostateTuple {
  StateVector psi;
  Act u;
  Act v;
  StateVector psi2;
  Act u2;
  Act v2;
};

AxiomReport check_macrostate_indifference(const DecisionProblem& dp, const Strategy& s,
                                          const std::vector<MacrostateTuple>& tuples,
                                          const Tolerances& tol = {});

/// Perturbation of an act by exp(i s H) with ||result - u|| = delta.
Act perturb_act(const Act& u, const Matrix& hermitian, double delta, const Tolerances& tol = {});

struct SuiteOptions {
  SamplingOptions sampling;
  ContinuityOptions continuity;
  bool include_macrostate_indifference = false;  // unnecessary axiom, off by default
  std::vector<MacrostateTuple> macrostate_tuples;
};

/// Ordering, State Supervenience, Branching Indifference, Diachronic
/// Consistency, Solution Continuity, Act Nondegeneracy (+ optionally
/// Macrostate Indifference), in that order.
std::vector<AxiomReport> run_axiom_suite(const DecisionProblem& dp, const Strategy& s,
                                         const SuiteOptions& opts = {}, const Tolerances& tol = {});

}  // namespace branchlab
