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

// Consistent-histories engine.
//
// A HistorySpace is an initial state psi0, a chain of unitary steps between
// times t0 < t1 < ... < tn, and one sample space (complete family of
// orthogonal projectors) per time t1..tn, given in the Schroedinger picture.
// The branch vector of a history alpha is
//
//   psi_alpha = P_an(tn) ... P_a1(t1) psi0,   P(t) = W(t)^dagger P W(t),
//
// and its weight is ||psi_alpha||^2. Weights are never called probabilities.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "branchlab/events.hpp"
#include "branchlab/hilbert.hpp"

namespace branchlab {

class SampleSpace {
 public:
  /// Validates P_a P_b = delta_ab P_a and sum P_a = 1 within tol.exact.
  static SampleSpace make(std::vector<Matrix> projectors, std::vector<std::string> labels,
                          const Tolerances& tol = {});
  static SampleSpace from_partition(const Partition& p);

  Index ambient_dim() const { return dim_; }
  std::size_t size() const { return projectors_.size(); }
  const Matrix& projector(std::size_t cell) const { return projectors_.at(cell); }
  const std::string& label(std::size_t cell) const { return labels_.at(cell); }
  const std::vector<std::string>& labels() const { return labels_; }
  /// Ranges of the projectors as a Partition.
  Partition to_partition(const Tolerances& tol = {}) const;

 private:
  SampleSpace(Index dim, std::vector<Matrix> p, std::vector<std::string> l)
      : dim_(dim), projectors_(std::move(p)), labels_(std::move(l)) {}

  Index dim_;
  std::vector<Matrix> projectors_;
  std::vector<std::string> labels_;
};

class Dynamics {
 public:
  /// times.size() == steps.size() + 1, strictly increasing; steps unitary.
  static Dynamics make(std::vector<double> times, std::vector<Matrix> steps,
                       const Tolerances& tol = {});
  /// n identity steps at times 0, 1, ..., n.
  static Dynamics trivial(Index dim, std::size_t n);

  std::size_t step_count() const { return steps_.size(); }
  const std::vector<double>& times() const { return times_; }
  const Matrix& step(std::size_t k) const { return steps_.at(k); }
  /// W_k = step(k) ... step(0): evolution from t0 to t_{k+1}.
  Matrix evolution(std::size_t k) const;

 private:
  Dynamics(std::vector<double> t, std::vector<Matrix> s) : times_(std::move(t)), steps_(std::move(s)) {}

  std::vector<double> times_;
  std::vector<Matrix> steps_;
};

/// One cell index per sample space.
using History = std::vector<std::size_t>;

class HistorySpace {
 public:
  static HistorySpace make(Dynamics dynamics, std::vector<SampleSpace> sample_spaces,
                           StateVector initial, const Tolerances& tol = {});

  Index ambient_dim() const { return initial_.size(); }
  std::size_t time_count() const { return sample_spaces_.size(); }
  const Dynamics& dynamics() const { return dynamics_; }
  const SampleSpace& sample_space(std::size_t k) const { return sample_spaces_.at(k); }
  const std::vector<SampleSpace>& sample_spaces() const { return sample_spaces_; }
  const StateVector& initial() const { return initial_; }

  /// Product of cell counts, saturating at SIZE_MAX.
  std::size_t history_count() const;
  std::string describe(const History& h) const;

 private:
  HistorySpace(Dynamics d, std::vector<SampleSpace> s, StateVector psi0)
      : dynamics_(std::move(d)), sample_spaces_(std::move(s)), initial_(std::move(psi0)) {}

  Dynamics dynamics_;
  std::vector<SampleSpace> sample_spaces_;
  StateVector initial_;
};

struct EnumerationOptions {
  std::size_t cap = 4096;
  /// Keep only histories with weight > floor. Off by default: tiny branches
  /// are branches too. Reports flag its use.
  std::optional<double> weight_floor;
};

struct Branch {
  History history;
  StateVector vector;  // Heisenberg-picture branch vector psi_alpha
  double weight = 0.0;
};

/// All histories in lexicographic order. Throws Error(enumeration_cap).
std::vector<Branch> enumerate_branches(const HistorySpace& hs, const EnumerationOptions& opts = {});

/// W_k^dagger P W_k for sample space k (0-based), cell `cell`.
Operator heisenberg_projector(const HistorySpace& hs, std::size_t k, std::size_t cell,
                              const Tolerances& tol = {});
StateVector branch_vector(const HistorySpace& hs, const History& alpha);
double history_weight(const HistorySpace& hs, const History& alpha);

struct OverlapPair {
  History a;
  History b;
  double overlap = 0.0;
};

struct ConsistencyReport {
  double max_overlap = 0.0;
  bool consistent = true;
  std::vector<OverlapPair> offenders;  // sorted by overlap, descending; truncated
  std::size_t offender_count = 0;      // before truncation
  std::size_t history_count = 0;
  bool weight_floor_applied = false;
};

ConsistencyReport consistency_report(const HistorySpace& hs, const Tolerances& tol = {},
                                     const EnumerationOptions& opts = {},
                                     std::size_t max_offenders = 256);

/// mapping[k][fine_cell] = coarse cell at time k.
using CellMapping = std::vector<std::vector<std::size_t>>;

struct AdditivityReport {
  double max_violation = 0.0;
  History worst;  // coarse history attaining it
};

/// Checks the mapping (coarse projector = sum of mapped fine projectors, same
/// dynamics and initial state) and returns max |p_coarse - sum p_fine|.
AdditivityReport additivity_check(const HistorySpace& fine, const HistorySpace& coarse,
                                  const CellMapping& mapping, const Tolerances& tol = {},
                                  const EnumerationOptions& opts = {});

struct BranchingReport {
  bool branching = true;
  /// A diverge-then-agree pair with both weights above tol.consistency.
  std::optional<std::pair<History, History>> witness;
  double witness_min_weight = 0.0;
};

BranchingReport branching_report(const HistorySpace& hs, const Tolerances& tol = {},
                                 const EnumerationOptions& opts = {});
bool is_branching(const HistorySpace& hs, const Tolerances& tol = {},
                  const EnumerationOptions& opts = {});

/// Branching refinement of a consistent space. At every time the cells are
/// rank-one projectors onto the (Schroedinger-picture) partial branch vectors
/// of the nonzero prefixes, plus one remainder cell per original cell so each
/// new sample space refines the old one. Final-time cells are the
/// (1/p_alpha)|psi_alpha><psi_alpha| projectors. Throws Error(not_consistent).
HistorySpace bc_refine(const HistorySpace& hs, const Tolerances& tol = {},
                       const EnumerationOptions& opts = {});

struct AlgebraMembershipReport {
  bool all_members = true;
  std::vector<History> members;
  std::vector<History> missing;
  std::vector<BlockSet> missing_support;  // atoms each missing line touches
};

/// Whether the range of each (1/p_alpha)|psi_alpha><psi_alpha| belongs to
/// `alg` (taken in the same, initial-time picture as psi_alpha).
AlgebraMembershipReport refinement_in_algebra(const HistorySpace& hs, const EventAlgebra& alg,
                                              const Tolerances& tol = {},
                                              const EnumerationOptions& opts = {});

}  // namespace branchlab
