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

#include "branchlab/histories.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

namespace branchlab {

namespace {

void require_history(const HistorySpace& hs, const History& alpha) {
  if (alpha.size() != hs.time_count()) {
    throw Error(ErrorCode::out_of_range, "history has " + std::to_string(alpha.size()) +
                                             " entries, space has " +
                                             std::to_string(hs.time_count()) + " times");
  }
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    if (alpha[k] >= hs.sample_space(k).size()) {
      throw Error(ErrorCode::out_of_range, "cell index " + std::to_string(alpha[k]) +
                                               " out of range at time " + std::to_string(k));
    }
  }
}

// Schroedinger-picture chain P_k U_k ... P_1 U_1 psi0 for a prefix.
StateVector schroedinger_prefix(const HistorySpace& hs, const History& prefix) {
  StateVector phi = hs.initial();
  for (std::size_t k = 0; k < prefix.size(); ++k) {
    phi = hs.sample_space(k).projector(prefix[k]) * (hs.dynamics().step(k) * phi);
  }
  return phi;
}

// Orthonormalize the columns symmetrically, V (V^dagger V)^{-1/2}.
Matrix lowdin(const Matrix& v) {
  const Matrix gram = v.adjoint() * v;
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram);
  const Eigen::VectorXd inv_sqrt = es.eigenvalues().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
  return v * (es.eigenvectors() * inv_sqrt.cast<Complex>().asDiagonal() *
              es.eigenvectors().adjoint());
}

}  // namespace

// ---------------------------------------------------------------------------

SampleSpace SampleSpace::make(std::vector<Matrix> projectors, std::vector<std::string> labels,
                              const Tolerances& tol) {
  if (projectors.empty()) throw Error(ErrorCode::invalid_sample_space, "no cells");
  if (projectors.size() != labels.size()) {
    throw Error(ErrorCode::invalid_sample_space, "projector and label counts differ");
  }
  const Index dim = projectors.front().rows();
  if (dim < 1) throw Error(ErrorCode::invalid_sample_space, "empty projector");
  std::set<std::string> seen;
  Matrix sum = Matrix::Zero(dim, dim);
  for (std::size_t a = 0; a < projectors.size(); ++a) {
    const Matrix& p = projectors[a];
    if (p.rows() != dim || p.cols() != dim) {
      throw Error(ErrorCode::dimension_mismatch, "cell '" + labels[a] + "' has the wrong shape");
    }
    if (!seen.insert(labels[a]).second) {
      throw Error(ErrorCode::invalid_sample_space, "duplicate cell label '" + labels[a] + "'");
    }
    if (!is_projector(p, tol)) {
      throw Error(ErrorCode::not_projector, "cell '" + labels[a] + "' is not a projector");
    }
    for (std::size_t b = 0; b < a; ++b) {
      const Matrix pq = p * projectors[b];
      if (pq.norm() > tol.exact && op_norm(pq) > tol.exact) {  // Frobenius bounds the op norm
        throw Error(ErrorCode::invalid_sample_space,
                    "cells '" + labels[b] + "' and '" + labels[a] + "' are not orthogonal");
      }
    }
    sum += p;
  }
  if (op_norm(sum - Matrix::Identity(dim, dim)) > tol.exact) {
    throw Error(ErrorCode::invalid_sample_space, "cells do not sum to the identity");
  }
  return SampleSpace(dim, std::move(projectors), std::move(labels));
}

SampleSpace SampleSpace::from_partition(const Partition& p) {
  std::vector<Matrix> projectors;
  for (const Event& b : p.blocks()) projectors.push_back(b.projector());
  return SampleSpace(p.ambient_dim(), std::move(projectors), p.labels());
}

Partition SampleSpace::to_partition(const Tolerances& tol) const {
  std::vector<Event> blocks;
  for (const Matrix& p : projectors_) blocks.push_back(column_span(p, tol));
  return Partition::make(std::move(blocks), labels_, tol);
}

Dynamics Dynamics::make(std::vector<double> times, std::vector<Matrix> steps, const Tolerances& tol) {
  if (steps.empty()) throw Error(ErrorCode::invalid_argument, "dynamics needs at least one step");
  if (times.size() != steps.size() + 1) {
    throw Error(ErrorCode::invalid_argument, "need one more time label than steps");
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw Error(ErrorCode::invalid_argument, "times must be strictly increasing");
    }
  }
  const Index dim = steps.front().rows();
  for (std::size_t k = 0; k < steps.size(); ++k) {
    if (steps[k].rows() != dim || steps[k].cols() != dim) {
      throw Error(ErrorCode::dimension_mismatch, "step " + std::to_string(k) + " has the wrong shape");
    }
    if (!is_unitary(steps[k], tol)) {
      throw Error(ErrorCode::not_unitary, "step " + std::to_string(k) + " is not unitary");
    }
  }
  return Dynamics(std::move(times), std::move(steps));
}

Dynamics Dynamics::trivial(Index dim, std::size_t n) {
  std::vector<double> times;
  std::vector<Matrix> steps;
  for (std::size_t k = 0; k <= n; ++k) times.push_back(static_cast<double>(k));
  for (std::size_t k = 0; k < n; ++k) steps.push_back(Matrix::Identity(dim, dim));
  return make(std::move(times), std::move(steps));
}

Matrix Dynamics::evolution(std::size_t k) const {
  Matrix w = steps_.at(0);
  for (std::size_t i = 1; i <= k; ++i) w = steps_.at(i) * w;
  return w;
}

HistorySpace HistorySpace::make(Dynamics dynamics, std::vector<SampleSpace> sample_spaces,
                                StateVector initial, const Tolerances& tol) {
  if (sample_spaces.size() != dynamics.step_count()) {
    throw Error(ErrorCode::invalid_argument, "need one sample space per step");
  }
  const Index dim = initial.size();
  if (dynamics.step(0).rows() != dim) {
    throw Error(ErrorCode::dimension_mismatch, "dynamics vs initial state");
  }
  for (const SampleSpace& s : sample_spaces) {
    if (s.ambient_dim() != dim) throw Error(ErrorCode::dimension_mismatch, "sample space vs initial state");
  }
  if (std::abs(initial.norm() - 1.0) > tol.exact) {
    throw Error(ErrorCode::invalid_argument, "initial state is not normalized");
  }
  return HistorySpace(std::move(dynamics), std::move(sample_spaces), std::move(initial));
}

std::size_t HistorySpace::history_count() const {
  std::size_t n = 1;
  for (const SampleSpace& s : sample_spaces_) {
    if (n > std::numeric_limits<std::size_t>::max() / s.size()) {
      return std::numeric_limits<std::size_t>::max();
    }
    n *= s.size();
  }
  return n;
}

std::string HistorySpace::describe(const History& h) const {
  std::string s = "(";
  for (std::size_t k = 0; k < h.size(); ++k) {
    if (k) s += ",";
    s += sample_spaces_.at(k).label(h[k]);
  }
  return s + ")";
}

// ---------------------------------------------------------------------------

std::vector<Branch> enumerate_branches(const HistorySpace& hs, const EnumerationOptions& opts) {
  const std::size_t count = hs.history_count();
  if (count > opts.cap) {
    throw Error(ErrorCode::enumeration_cap, std::to_string(count) + " histories exceed the cap of " +
                                                std::to_string(opts.cap));
  }
  const std::size_t n = hs.time_count();
  const Matrix w_final_adj = hs.dynamics().evolution(n - 1).adjoint();

  std::vector<Branch> out;
  out.reserve(count);
  // Depth-first over prefixes, carrying the Schroedinger-picture partial vector.
  History prefix;
  std::vector<StateVector> stack{hs.initial()};
  auto recurse = [&](auto&& self, std::size_t k) -> void {
    if (k == n) {
      Branch b;
      b.history = prefix;
      b.vector = w_final_adj * stack.back();
      b.weight = b.vector.squaredNorm();
      if (!opts.weight_floor || b.weight > *opts.weight_floor) out.push_back(std::move(b));
      return;
    }
    const StateVector evolved = hs.dynamics().step(k) * stack.back();
    for (std::size_t c = 0; c < hs.sample_space(k).size(); ++c) {
      prefix.push_back(c);
      stack.push_back(hs.sample_space(k).projector(c) * evolved);
      self(self, k + 1);
      stack.pop_back();
      prefix.pop_back();
    }
  };
  recurse(recurse, 0);
  return out;
}

Operator heisenberg_projector(const HistorySpace& hs, std::size_t k, std::size_t cell,
                              const Tolerances& tol) {
  if (k >= hs.time_count()) throw Error(ErrorCode::out_of_range, "time index out of range");
  if (cell >= hs.sample_space(k).size()) throw Error(ErrorCode::out_of_range, "cell index out of range");
  const Matrix w = hs.dynamics().evolution(k);
  return Operator::projector(w.adjoint() * hs.sample_space(k).projector(cell) * w, tol);
}

StateVector branch_vector(const HistorySpace& hs, const History& alpha) {
  require_history(hs, alpha);
  return hs.dynamics().evolution(hs.time_count() - 1).adjoint() * schroedinger_prefix(hs, alpha);
}

double history_weight(const HistorySpace& hs, const History& alpha) {
  require_history(hs, alpha);
  // Unitaries preserve norms, so the Schroedinger chain suffices.
  return schroedinger_prefix(hs, alpha).squaredNorm();
}

ConsistencyReport consistency_report(const HistorySpace& hs, const Tolerances& tol,
                                     const EnumerationOptions& opts, std::size_t max_offenders) {
  const auto branches = enumerate_branches(hs, opts);
  ConsistencyReport r;
  r.history_count = branches.size();
  r.weight_floor_applied = opts.weight_floor.has_value();
  for (std::size_t i = 0; i < branches.size(); ++i) {
    if (branches[i].weight == 0.0) continue;
    for (std::size_t j = i + 1; j < branches.size(); ++j) {
      if (branches[j].weight == 0.0) continue;
      const double ov = std::abs(branches[i].vector.dot(branches[j].vector));
      r.max_overlap = std::max(r.max_overlap, ov);
      if (ov > tol.consistency) {
        ++r.offender_count;
        r.offenders.push_back({branches[i].history, branches[j].history, ov});
      }
    }
  }
  r.consistent = r.max_overlap <= tol.consistency;
  std::stable_sort(r.offenders.begin(), r.offenders.end(),
                   [](const OverlapPair& a, const OverlapPair& b) { return a.overlap > b.overlap; });
  if (r.offenders.size() > max_offenders) r.offenders.resize(max_offenders);
  return r;
}

AdditivityReport additivity_check(const HistorySpace& fine, const HistorySpace& coarse,
                                  const CellMapping& mapping, const Tolerances& tol,
                                  const EnumerationOptions& opts) {
  if (fine.ambient_dim() != coarse.ambient_dim()) {
    throw Error(ErrorCode::invalid_mapping, "spaces have different dimensions");
  }
  if (fine.time_count() != coarse.time_count() || mapping.size() != fine.time_count()) {
    throw Error(ErrorCode::invalid_mapping, "time counts differ");
  }
  if ((fine.initial() - coarse.initial()).norm() > tol.exact) {
    throw Error(ErrorCode::invalid_mapping, "initial states differ");
  }
  const Index dim = fine.ambient_dim();
  for (std::size_t k = 0; k < mapping.size(); ++k) {
    if (op_norm_distance(fine.dynamics().step(k), coarse.dynamics().step(k)) > tol.exact) {
      throw Error(ErrorCode::invalid_mapping, "dynamics differ at step " + std::to_string(k));
    }
    const SampleSpace& fs = fine.sample_space(k);
    const SampleSpace& cs = coarse.sample_space(k);
    if (mapping[k].size() != fs.size()) {
      throw Error(ErrorCode::invalid_mapping, "mapping at time " + std::to_string(k) +
                                                  " does not cover every fine cell");
    }
    std::vector<Matrix> sums(cs.size(), Matrix::Zero(dim, dim));
    for (std::size_t a = 0; a < fs.size(); ++a) {
      if (mapping[k][a] >= cs.size()) {
        throw Error(ErrorCode::invalid_mapping, "coarse cell index out of range");
      }
      sums[mapping[k][a]] += fs.projector(a);
    }
    for (std::size_t c = 0; c < cs.size(); ++c) {
      if (op_norm(sums[c] - cs.projector(c)) > tol.exact) {
        throw Error(ErrorCode::invalid_mapping, "coarse cell '" + cs.label(c) +
                                                    "' is not the sum of its fine cells");
      }
    }
  }

  std::map<History, double> summed;
  for (const Branch& b : enumerate_branches(fine, opts)) {
    History h(b.history.size());
    for (std::size_t k = 0; k < h.size(); ++k) h[k] = mapping[k][b.history[k]];
    summed[h] += b.weight;
  }
  AdditivityReport r;
  for (const Branch& b : enumerate_branches(coarse, opts)) {
    const auto it = summed.find(b.history);
    const double v = std::abs(b.weight - (it == summed.end() ? 0.0 : it->second));
    if (r.worst.empty() || v > r.max_violation) {
      r.max_violation = v;
      r.worst = b.history;
    }
  }
  return r;
}

BranchingReport branching_report(const HistorySpace& hs, const Tolerances& tol,
                                 const EnumerationOptions& opts) {
  const auto branches = enumerate_branches(hs, opts);
  BranchingReport r;
  const std::size_t n = hs.time_count();
  for (std::size_t a = 0; a < branches.size(); ++a) {
    if (branches[a].weight <= tol.consistency) continue;
    for (std::size_t b = a + 1; b < branches.size(); ++b) {
      if (branches[b].weight <= tol.consistency) continue;
      const History& x = branches[a].history;
      const History& y = branches[b].history;
      std::size_t i = 0;
      while (i < n && x[i] == y[i]) ++i;
      bool agree_later = false;
      for (std::size_t j = i + 1; j < n && !agree_later; ++j) agree_later = x[j] == y[j];
      if (!agree_later) continue;
      const double w = std::min(branches[a].weight, branches[b].weight);
      if (!r.witness || w > r.witness_min_weight) {
        r.branching = false;
        r.witness = std::make_pair(x, y);
        r.witness_min_weight = w;
      }
    }
  }
  return r;
}

bool is_branching(const HistorySpace& hs, const Tolerances& tol, const EnumerationOptions& opts) {
  return branching_report(hs, tol, opts).branching;
}

HistorySpace bc_refine(const HistorySpace& hs, const Tolerances& tol, const EnumerationOptions& opts) {
  const auto report = consistency_report(hs, tol, opts);
  if (!report.consistent) {
    throw Error(ErrorCode::not_consistent,
                "max overlap " + std::to_string(report.max_overlap) + " exceeds tolerance");
  }
  const Index dim = hs.ambient_dim();
  const std::size_t n = hs.time_count();

  // Surviving prefixes per time, with their Schroedinger-picture vectors.
  std::vector<std::pair<History, StateVector>> level{{History{}, hs.initial()}};
  std::vector<SampleSpace> refined;
  for (std::size_t k = 0; k < n; ++k) {
    const SampleSpace& ss = hs.sample_space(k);
    std::vector<std::pair<History, StateVector>> next;
    for (const auto& [prefix, phi] : level) {
      const StateVector evolved = hs.dynamics().step(k) * phi;
      for (std::size_t c = 0; c < ss.size(); ++c) {
        StateVector v = ss.projector(c) * evolved;
        if (v.squaredNorm() <= tol.rank) continue;
        History h = prefix;
        h.push_back(c);
        next.emplace_back(std::move(h), std::move(v));
      }
    }

    std::vector<Matrix> projectors;
    std::vector<std::string> labels;
    for (std::size_t c = 0; c < ss.size(); ++c) {
      std::vector<std::size_t> members;
      for (std::size_t i = 0; i < next.size(); ++i) {
        if (next[i].first.back() == c) members.push_back(i);
      }
      Matrix lines = Matrix::Zero(dim, 0);
      if (!members.empty()) {
        Matrix v(dim, static_cast<Index>(members.size()));
        for (std::size_t m = 0; m < members.size(); ++m) {
          v.col(static_cast<Index>(m)) = next[members[m]].second.normalized();
        }
        lines = lowdin(v);
        for (std::size_t m = 0; m < members.size(); ++m) {
          const StateVector q = lines.col(static_cast<Index>(m));
          projectors.push_back(q * q.adjoint());
          std::string label;
          for (std::size_t t = 0; t < next[members[m]].first.size(); ++t) {
            if (t) label += ".";
            label += hs.sample_space(t).label(next[members[m]].first[t]);
          }
          labels.push_back(label);
        }
      }
      const Matrix rest = ss.projector(c) - lines * lines.adjoint();
      if (op_norm(rest) > tol.exact) {
        projectors.push_back(rest);
        labels.push_back("rest:" + ss.label(c));
      }
    }
    refined.push_back(SampleSpace::make(std::move(projectors), std::move(labels), tol));
    level = std::move(next);
  }
  return HistorySpace::make(hs.dynamics(), std::move(refined), hs.initial(), tol);
}

AlgebraMembershipReport refinement_in_algebra(const HistorySpace& hs, const EventAlgebra& alg,
                                              const Tolerances& tol,
                                              const EnumerationOptions& opts) {
  if (alg.ambient_dim() != hs.ambient_dim()) {
    throw Error(ErrorCode::dimension_mismatch, "algebra vs history space");
  }
  const auto report = consistency_report(hs, tol, opts);
  if (!report.consistent) {
    throw Error(ErrorCode::not_consistent,
                "max overlap " + std::to_string(report.max_overlap) + " exceeds tolerance");
  }
  AlgebraMembershipReport r;
  for (const Branch& b : enumerate_branches(hs, opts)) {
    if (b.weight <= tol.rank) continue;
    const Event line = Event::line(b.vector);
    if (alg.contains(line, tol)) {
      r.members.push_back(b.history);
    } else {
      r.all_members = false;
      r.missing.push_back(b.history);
      r.missing_support.push_back(alg.support_of(b.vector.normalized(), tol.exact));
    }
  }
  return r;
}

}  // namespace branchlab
