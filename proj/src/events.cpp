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

#include "branchlab/events.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace branchlab {

Partition Partition::make(std::vector<Event> blocks, std::vector<std::string> labels,
                          const Tolerances& tol) {
  if (blocks.empty()) throw Error(ErrorCode::invalid_partition, "no blocks");
  if (blocks.size() != labels.size()) {
    throw Error(ErrorCode::invalid_partition, "block and label counts differ");
  }
  const Index dim = blocks.front().ambient_dim();
  std::set<std::string> seen;
  Index rank_sum = 0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].ambient_dim() != dim) {
      throw Error(ErrorCode::dimension_mismatch, "partition blocks in different dimensions");
    }
    if (blocks[i].is_zero()) {
      throw Error(ErrorCode::invalid_partition, "block '" + labels[i] + "' is the zero subspace");
    }
    if (!seen.insert(labels[i]).second) {
      throw Error(ErrorCode::invalid_partition, "duplicate label '" + labels[i] + "'");
    }
    rank_sum += blocks[i].rank();
    for (std::size_t j = 0; j < i; ++j) {
      if (!is_orthogonal(blocks[i], blocks[j], tol)) {
        throw Error(ErrorCode::invalid_partition,
                    "blocks '" + labels[j] + "' and '" + labels[i] + "' overlap");
      }
    }
  }
  if (rank_sum != dim) {
    throw Error(ErrorCode::invalid_partition, "block ranks sum to " + std::to_string(rank_sum) +
                                                  ", ambient dimension is " + std::to_string(dim));
  }
  return Partition(dim, std::move(blocks), std::move(labels));
}

Partition Partition::standard_basis(Index dim, const std::string& prefix) {
  std::vector<Event> blocks;
  std::vector<std::string> labels;
  for (Index i = 0; i < dim; ++i) {
    blocks.push_back(Event::line(StateVector::Unit(dim, i)));
    labels.push_back(prefix + std::to_string(i));
  }
  return make(std::move(blocks), std::move(labels));
}

std::optional<std::size_t> Partition::index_of(const std::string& label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

std::size_t Partition::require_index(const std::string& label) const {
  const auto i = index_of(label);
  if (!i) throw Error(ErrorCode::invalid_argument, "unknown block label '" + label + "'");
  return *i;
}

// ---------------------------------------------------------------------------

BlockSet set_meet(const BlockSet& a, const BlockSet& b) {
  BlockSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

BlockSet set_join(const BlockSet& a, const BlockSet& b) {
  BlockSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

BlockSet set_complement(const BlockSet& a, std::size_t atoms) {
  BlockSet out;
  for (std::size_t i = 0, j = 0; i < atoms; ++i) {
    if (j < a.size() && a[j] == i) {
      ++j;
    } else {
      out.push_back(i);
    }
  }
  return out;
}

bool set_contains(const BlockSet& big, const BlockSet& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

// ---------------------------------------------------------------------------

std::uint64_t EventAlgebra::member_count() const {
  const std::size_t k = atom_count();
  if (k >= 64) return std::numeric_limits<std::uint64_t>::max();
  return std::uint64_t{1} << k;
}

std::vector<BlockSet> EventAlgebra::members() const {
  const std::size_t k = atom_count();
  if (k > 20) throw Error(ErrorCode::enumeration_cap, "refusing to enumerate 2^" + std::to_string(k));
  std::vector<BlockSet> out;
  out.reserve(std::size_t{1} << k);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    BlockSet m;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask & (std::uint64_t{1} << i)) m.push_back(i);
    }
    out.push_back(std::move(m));
  }
  return out;
}

BlockSet EventAlgebra::everything() const {
  BlockSet all(atom_count());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return all;
}

Event EventAlgebra::event_of(const BlockSet& member) const {
  Index cols = 0;
  for (std::size_t i : member) cols += generators_.block(i).rank();
  if (cols == 0) return Event::zero(ambient_dim());
  Matrix frame(ambient_dim(), cols);
  Index at = 0;
  for (std::size_t i : member) {
    const auto& f = generators_.block(i).frame();
    frame.middleCols(at, f.cols()) = f;
    at += f.cols();
  }
  return Event::from_frame(std::move(frame));
}

std::optional<BlockSet> EventAlgebra::member_of(const Event& e, const Tolerances& tol) const {
  if (e.ambient_dim() != ambient_dim()) {
    throw Error(ErrorCode::dimension_mismatch, "event vs algebra");
  }
  BlockSet member;
  Index rank = 0;
  for (std::size_t i = 0; i < atom_count(); ++i) {
    if (e.contains(generators_.block(i), tol)) {
      member.push_back(i);
      rank += generators_.block(i).rank();
    }
  }
  if (rank != e.rank()) return std::nullopt;
  return member;
}

BlockSet EventAlgebra::support_of(const StateVector& v, double threshold) const {
  BlockSet out;
  for (std::size_t i = 0; i < atom_count(); ++i) {
    if ((generators_.block(i).frame().adjoint() * v).norm() > threshold) out.push_back(i);
  }
  return out;
}

std::string EventAlgebra::describe(const BlockSet& member) const {
  std::string s = "{";
  for (std::size_t i = 0; i < member.size(); ++i) {
    if (i) s += ",";
    s += generators_.label(member[i]);
  }
  return s + "}";
}

EventAlgebra algebra_from_partition(Partition p) { return EventAlgebra(std::move(p)); }

// ---------------------------------------------------------------------------

bool orthogonality_condition_holds(const Event& e, const Event& f, const Tolerances& tol) {
  const bool meet_zero = meet(e, f, tol).is_zero();
  return meet_zero == is_orthogonal(e, f, tol);
}

bool is_refinement(const Partition& fine, const Partition& coarse, const Tolerances& tol) {
  if (fine.ambient_dim() != coarse.ambient_dim()) {
    throw Error(ErrorCode::dimension_mismatch, "partitions in different dimensions");
  }
  std::vector<Index> filled(coarse.size(), 0);
  for (const Event& b : fine.blocks()) {
    int owners = 0;
    for (std::size_t j = 0; j < coarse.size(); ++j) {
      if (coarse.block(j).contains(b, tol)) {
        ++owners;
        filled[j] += b.rank();
      }
    }
    if (owners != 1) return false;
  }
  for (std::size_t j = 0; j < coarse.size(); ++j) {
    if (filled[j] != coarse.block(j).rank()) return false;
  }
  return true;
}

Partition common_refinement(const Partition& p, const Partition& q, const Tolerances& tol) {
  if (p.ambient_dim() != q.ambient_dim()) {
    throw Error(ErrorCode::dimension_mismatch, "partitions in different dimensions");
  }
  std::vector<Event> blocks;
  std::vector<std::string> labels;
  Index rank_sum = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < q.size(); ++j) {
      Event m = meet(p.block(i), q.block(j), tol);
      if (m.is_zero()) {
        if (!is_orthogonal(p.block(i), q.block(j), tol)) {
          throw Error(ErrorCode::non_commuting, "blocks '" + p.label(i) + "' and '" + q.label(j) +
                                                    "' meet in {0} without being orthogonal");
        }
        continue;
      }
      rank_sum += m.rank();
      blocks.push_back(std::move(m));
      labels.push_back(p.label(i) + "&" + q.label(j));
    }
  }
  if (rank_sum != p.ambient_dim()) {
    throw Error(ErrorCode::non_commuting, "nonzero meets span only " + std::to_string(rank_sum) +
                                              " of " + std::to_string(p.ambient_dim()) +
                                              " dimensions");
  }
  if (p.size() == q.size() && labels.size() == p.size()) {
    // p and q coincide block for block: keep p's labels.
    bool same = true;
    for (std::size_t i = 0; i < p.size() && same; ++i) {
      same = same_subspace(blocks[i], p.block(i), tol);
    }
    if (same) return p;
  }
  return Partition::make(std::move(blocks), std::move(labels), tol);
}

bool is_atomic_generated(const EventAlgebra& alg, const Tolerances& tol) {
  // Minimal nonzero members are singletons {i}; they are atoms iff the block
  // is nonzero and does not split into smaller members (a block is never the
  // join of others, since blocks are pairwise orthogonal and nonzero).
  for (std::size_t i = 0; i < alg.atom_count(); ++i) {
    const Event& b = alg.generators().block(i);
    if (b.is_zero()) return false;
    for (std::size_t j = 0; j < alg.atom_count(); ++j) {
      if (j != i && b.contains(alg.generators().block(j), tol)) return false;
    }
  }
  return true;
}

}  // namespace branchlab
