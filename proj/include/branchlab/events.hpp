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

// Boolean event algebras generated by orthogonal partitions of the space.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "branchlab/hilbert.hpp"

namespace branchlab {

/// Mutually orthogonal, nonzero blocks whose join is the whole space.
class Partition {
 public:
  static Partition make(std::vector<Event> blocks, std::vector<std::string> labels,
                        const Tolerances& tol = {});
  /// One line per standard basis vector, labelled `prefix + index`.
  static Partition standard_basis(Index dim, const std::string& prefix = "e");

  Index ambient_dim() const { return dim_; }
  std::size_t size() const { return blocks_.size(); }
  const Event& block(std::size_t i) const { return blocks_.at(i); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<Event>& blocks() const { return blocks_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<std::size_t> index_of(const std::string& label) const;
  /// Throws Error(invalid_argument) for unknown labels.
  std::size_t require_index(const std::string& label) const;

 private:
  Partition(Index dim, std::vector<Event> blocks, std::vector<std::string> labels)
      : dim_(dim), blocks_(std::move(blocks)), labels_(std::move(labels)) {}

  Index dim_;
  std::vector<Event> blocks_;
  std::vector<std::string> labels_;
};

/// Algebra member as the sorted list of generator blocks it joins.
using BlockSet = std::vector<std::size_t>;

BlockSet set_meet(const BlockSet& a, const BlockSet& b);
BlockSet set_join(const BlockSet& a, const BlockSet& b);
BlockSet set_complement(const BlockSet& a, std::size_t atoms);
bool set_contains(const BlockSet& big, const BlockSet& small);

/// The Boolean algebra whose atoms are the blocks of a partition. Members are
/// never enumerated as matrices unless asked for.
class EventAlgebra {
 public:
  explicit EventAlgebra(Partition generators) : generators_(std::move(generators)) {}

  const Partition& generators() const { return generators_; }
  std::size_t atom_count() const { return generators_.size(); }
  Index ambient_dim() const { return generators_.ambient_dim(); }

  /// 2^atoms, saturating at UINT64_MAX.
  std::uint64_t member_count() const;
  /// Every member, in increasing bitmask order. Requires atoms <= 20.
  std::vector<BlockSet> members() const;

  BlockSet everything() const;
  /// Frame = concatenation of the block frames in index order.
  Event event_of(const BlockSet& member) const;
  /// The member equal to e, if e is a join of blocks.
  std::optional<BlockSet> member_of(const Event& e, const Tolerances& tol = {}) const;
  bool contains(const Event& e, const Tolerances& tol = {}) const {
    return member_of(e, tol).has_value();
  }
  /// Blocks with ||P_block v|| > threshold.
  BlockSet support_of(const StateVector& v, double threshold) const;

  std::string describe(const BlockSet& member) const;

 private:
  Partition generators_;
};

EventAlgebra algebra_from_partition(Partition p);

/// (meet(E,F) == {0}) <=> is_orthogonal(E,F).
bool orthogonality_condition_holds(const Event& e, const Event& f, const Tolerances& tol = {});

bool is_refinement(const Partition& fine, const Partition& coarse, const Tolerances& tol = {});

/// Blocks are the nonzero meets p_i ^ q_j, labelled "p_i&q_j". Throws
/// Error(non_commuting) when some pair violates the orthogonality condition
/// or the meets fail to fill the space.
Partition common_refinement(const Partition& p, const Partition& q, const Tolerances& tol = {});

/// Generator blocks are exactly the minimal nonzero members. Always true at
/// finite dimension for algebras built from a partition.
bool is_atomic_generated(const EventAlgebra& alg, const Tolerances& tol = {});

}  // namespace branchlab
