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

// Quantum decision problems: macrostates, rewards, acts and the richness
// conditions on act sets, plus the availability constructions.
//
// An act on an event E is an isometry from E into the full space. It is held
// in E's frame coordinates: matrix is (ambient x rank E), and the ambient
// operator it represents is matrix * frame(E)^dagger.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "branchlab/events.hpp"
#include "branchlab/hilbert.hpp"

namespace branchlab {

class Act {
 public:
  static Act make(Event domain, Matrix matrix, std::string label, const Tolerances& tol = {});
  /// The inclusion of E into the space.
  static Act identity(const Event& domain, std::string label = "1");

  const Event& domain() const { return domain_; }
  const Matrix& matrix() const { return matrix_; }
  const std::string& label() const { return label_; }
  Index ambient_dim() const { return matrix_.rows(); }

  /// U psi for psi in the domain. Throws Error(state_outside_domain).
  StateVector apply(const StateVector& psi, const Tolerances& tol = {}) const;
  /// Ambient partial isometry matrix * frame^dagger.
  Matrix as_operator() const { return matrix_ * domain_.frame().adjoint(); }
  /// U|F for F inside the domain.
  Act restrict_to(const Event& f, const Tolerances& tol = {}) const;
  /// next o this; next's domain must contain this act's range.
  Act then(const Act& next, const Tolerances& tol = {}) const;
  /// Same domain and same ambient operator.
  bool same_as(const Act& other, const Tolerances& tol = {}) const;
  Act relabeled(std::string label) const;

 private:
  Act(Event d, Matrix m, std::string l) : domain_(std::move(d)), matrix_(std::move(m)), label_(std::move(l)) {}

  Event domain_;
  Matrix matrix_;
  std::string label_;
};

/// Isometry from `domain` into `range` sending the unit vector `from` to the
/// unit vector `to`; remaining directions go to a completed basis of range.
Act isometry_sending(const Event& domain, const Event& range, const StateVector& from,
                     const StateVector& to, std::string label, const Tolerances& tol = {});

class DecisionProblem {
 public:
  /// reward_of maps every macrostate label to a reward label; each reward must
  /// equal the join of the macrostates mapped to it.
  static DecisionProblem make(Partition macrostates, Partition rewards,
                              std::map<std::string, std::string> reward_of,
                              const Tolerances& tol = {});

  Index ambient_dim() const { return macrostates().ambient_dim(); }
  const Partition& macrostates() const { return algebra_.generators(); }
  const Partition& rewards() const { return rewards_; }
  const EventAlgebra& algebra() const { return algebra_; }
  const Tolerances& tolerances() const { return tol_; }

  /// Reward index of macrostate i.
  std::size_t reward_of(std::size_t macro) const { return reward_of_.at(macro); }
  /// The macrostates making up reward r, as an algebra member.
  BlockSet reward_member(std::size_t reward) const;
  std::size_t macro_index(const std::string& label) const { return macrostates().require_index(label); }
  std::size_t reward_index(const std::string& label) const { return rewards_.require_index(label); }

  /// The act's domain must be an algebra member. Returns that member.
  BlockSet add_act(Act act);
  const std::vector<Act>& acts_at(const BlockSet& member) const;
  const std::map<BlockSet, std::vector<Act>>& acts() const { return acts_; }
  std::optional<Act> find_act(const BlockSet& member, const std::string& label) const;
  /// The member an event corresponds to. Throws Error(invalid_argument).
  BlockSet require_member(const Event& e) const;

 private:
  DecisionProblem(EventAlgebra alg, Partition rewards, std::vector<std::size_t> reward_of,
                  const Tolerances& tol)
      : algebra_(std::move(alg)), rewards_(std::move(rewards)), reward_of_(std::move(reward_of)), tol_(tol) {}

  EventAlgebra algebra_;
  Partition rewards_;
  std::vector<std::size_t> reward_of_;
  std::map<BlockSet, std::vector<Act>> acts_;
  Tolerances tol_;
};

/// Atoms M with ||Pi_M U|| > tol.exact: the smallest member containing the range.
BlockSet smallest_member(const Act& u, const EventAlgebra& alg, const Tolerances& tol = {});
Event smallest_event(const Act& u, const EventAlgebra& alg, const Tolerances& tol = {});

struct ConditionResult {
  std::string name;
  bool pass = true;
  std::vector<std::string> witnesses;
};

struct RichnessReport {
  std::vector<ConditionResult> conditions;  // Restriction, Composition, Indolence, Continuation, Irreversibility
  std::vector<std::string> empty_act_sets;  // members with no acts
  bool full_space_empty = false;            // no acts on the whole space
  /// Conditions that pass only because some act set they quantify over is empty.
  std::vector<std::string> vacuous;
  bool all_pass() const;
  const ConditionResult& condition(const std::string& name) const;
};

RichnessReport check_richness(const DecisionProblem& dp, const Tolerances& tol = {});

struct LiftResult {
  std::optional<Act> act;  // direct sum when the ranges are orthogonal
  double defect = 0.0;     // ||U1^dagger U2||
  bool feasible() const { return act.has_value(); }
};

/// Requires orthogonal domains.
LiftResult compatible_lift(const Act& u1, const Act& u2, const Tolerances& tol = {});

struct LedgerEntry {
  std::string reward;
  Index required = 0;
  Index available = 0;
};

struct RewardSearchResult {
  std::optional<Act> act;
  std::vector<LedgerEntry> ledger;  // one per targeted reward
  bool feasible() const { return act.has_value(); }
};

/// An act on the join of `sources` (macrostate indices) sending each source
/// into its target reward (reward indices), or the dimension ledger that rules
/// it out.
RewardSearchResult reward_act_search(const DecisionProblem& dp, const std::vector<std::size_t>& sources,
                                     const std::vector<std::size_t>& targets,
                                     const Tolerances& tol = {});

struct BranchSource {
  std::size_t macro = 0;
  StateVector state;
  std::vector<std::pair<std::size_t, double>> targets;  // (target macrostate, weight)
};

/// An act on the join of the source macrostates with
/// U psi_i = ||psi_i|| sum_j sqrt(p_ij) n_ij, n_ij a unit vector in N_ij.
/// Every image direction is a fresh frame column, so ranges of different
/// sources never overlap.
Act branching_act(const DecisionProblem& dp, const std::vector<BranchSource>& sources,
                  const Tolerances& tol = {});

struct ErasureResult {
  Act u;
  Act v;
  StateVector target;  // common image direction (unit)
  LiftResult lift;
};

/// Acts on M and N (macrostate indices, same reward) with U psi = V phi =
/// ||psi|| t, where t is the first frame column of the reward's
/// lowest-labelled macrostate.
ErasureResult erasure_pair(const DecisionProblem& dp, std::size_t m, std::size_t n,
                           const StateVector& psi, const StateVector& phi, const Tolerances& tol = {});

}  // namespace branchlab
