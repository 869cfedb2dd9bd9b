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

#include "branchlab/decision.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace branchlab {

namespace {

constexpr std::size_t kMaxSubsetAtoms = 12;

std::vector<BlockSet> proper_nonempty_subsets(const BlockSet& e) {
  if (e.size() > kMaxSubsetAtoms) {
    throw Error(ErrorCode::enumeration_cap,
                "member with " + std::to_string(e.size()) + " atoms has too many sub-members");
  }
  std::vector<BlockSet> out;
  const std::uint32_t full = (1u << e.size()) - 1;
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    BlockSet f;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (mask & (1u << i)) f.push_back(e[i]);
    }
    out.push_back(std::move(f));
  }
  return out;
}

bool has_act(const std::vector<Act>& acts, const Act& u, const Tolerances& tol) {
  return std::any_of(acts.begin(), acts.end(), [&](const Act& a) { return a.same_as(u, tol); });
}

}  // namespace

// ---------------------------------------------------------------------------
// Act

Act Act::make(Event domain, Matrix matrix, std::string label, const Tolerances& tol) {
  if (matrix.rows() != domain.ambient_dim() || matrix.cols() != domain.rank()) {
    throw Error(ErrorCode::shape_mismatch, "act '" + label + "' matrix must be " +
                                               std::to_string(domain.ambient_dim()) + " x " +
                                               std::to_string(domain.rank()));
  }
  if (!is_isometry(matrix, tol)) {
    throw Error(ErrorCode::not_unitary, "act '" + label + "' is not an isometry on its domain");
  }
  return Act(std::move(domain), std::move(matrix), std::move(label));
}

Act Act::identity(const Event& domain, std::string label) {
  return Act(domain, domain.frame(), std::move(label));
}

StateVector Act::apply(const StateVector& psi, const Tolerances& tol) const {
  if (psi.size() != ambient_dim()) throw Error(ErrorCode::dimension_mismatch, "state vs act");
  if (!domain_.contains(psi, tol)) {
    throw Error(ErrorCode::state_outside_domain, "state is not in the domain of '" + label_ + "'");
  }
  return matrix_ * (domain_.frame().adjoint() * psi);
}

Act Act::restrict_to(const Event& f, const Tolerances& tol) const {
  require_same_dim(domain_, f);
  if (!domain_.contains(f, tol)) {
    throw Error(ErrorCode::state_outside_domain, "restriction target is not inside the domain");
  }
  return Act(f, matrix_ * (domain_.frame().adjoint() * f.frame()), label_ + "|");
}

Act Act::then(const Act& next, const Tolerances& tol) const {
  if (next.ambient_dim() != ambient_dim()) throw Error(ErrorCode::dimension_mismatch, "act composition");
  const Matrix inside = next.domain_.frame().adjoint() * matrix_;
  // The range must lie in next's domain: nothing may be lost by projecting.
  if (op_norm(next.domain_.frame() * inside - matrix_) > tol.exact) {
    throw Error(ErrorCode::state_outside_domain,
                "range of '" + label_ + "' is not inside the domain of '" + next.label_ + "'");
  }
  return Act(domain_, next.matrix_ * inside, next.label_ + "*" + label_);
}

bool Act::same_as(const Act& other, const Tolerances& tol) const {
  if (other.ambient_dim() != ambient_dim()) return false;
  if (!same_subspace(domain_, other.domain_, tol)) return false;
  return op_norm(as_operator() - other.as_operator()) <= tol.exact;
}

Act Act::relabeled(std::string label) const { return Act(domain_, matrix_, std::move(label)); }

Act isometry_sending(const Event& domain, const Event& range, const StateVector& from,
                     const StateVector& to, std::string label, const Tolerances& tol) {
  require_same_dim(domain, range);
  if (range.rank() < domain.rank()) {
    throw Error(ErrorCode::insufficient_dimension, "range is smaller than the domain");
  }
  if (!domain.contains(from, tol) || !range.contains(to, tol)) {
    throw Error(ErrorCode::state_outside_domain, "endpoint outside its subspace");
  }
  if (std::abs(from.norm() - 1.0) > tol.exact || std::abs(to.norm() - 1.0) > tol.exact) {
    throw Error(ErrorCode::invalid_argument, "endpoints must be unit vectors");
  }
  const Matrix a = complete_basis(domain.frame().adjoint() * from);  // rank x rank
  const Matrix b = complete_basis(range.frame().adjoint() * to);     // rank(range)^2
  Matrix m = range.frame() * b.leftCols(domain.rank()) * a.adjoint();
  return Act::make(domain, std::move(m), std::move(label), tol);
}

// ---------------------------------------------------------------------------
// DecisionProblem

DecisionProblem DecisionProblem::make(Partition macrostates, Partition rewards,
                                      std::map<std::string, std::string> reward_of,
                                      const Tolerances& tol) {
  tol.validate();
  if (macrostates.ambient_dim() != rewards.ambient_dim()) {
    throw Error(ErrorCode::dimension_mismatch, "macrostates and rewards in different dimensions");
  }
  std::vector<std::size_t> index(macrostates.size());
  std::vector<std::vector<std::size_t>> members(rewards.size());
  for (std::size_t i = 0; i < macrostates.size(); ++i) {
    const auto it = reward_of.find(macrostates.label(i));
    if (it == reward_of.end()) {
      throw Error(ErrorCode::invalid_partition, "macrostate '" + macrostates.label(i) + "' has no reward");
    }
    index[i] = rewards.require_index(it->second);
    members[index[i]].push_back(i);
  }
  if (reward_of.size() != macrostates.size()) {
    throw Error(ErrorCode::invalid_partition, "reward map names unknown macrostates");
  }
  for (std::size_t r = 0; r < rewards.size(); ++r) {
    Event j = Event::zero(rewards.ambient_dim());
    for (std::size_t i : members[r]) j = join(j, macrostates.block(i), tol);
    if (!same_subspace(j, rewards.block(r), tol)) {
      throw Error(ErrorCode::invalid_partition,
                  "reward '" + rewards.label(r) + "' is not the join of its macrostates");
    }
  }
  return DecisionProblem(EventAlgebra(std::move(macrostates)), std::move(rewards), std::move(index), tol);
}

BlockSet DecisionProblem::reward_member(std::size_t reward) const {
  BlockSet out;
  for (std::size_t i = 0; i < reward_of_.size(); ++i) {
    if (reward_of_[i] == reward) out.push_back(i);
  }
  return out;
}

BlockSet DecisionProblem::require_member(const Event& e) const {
  const auto m = algebra_.member_of(e, tol_);
  if (!m) throw Error(ErrorCode::invalid_argument, "event is not a member of the macrostate algebra");
  return *m;
}

BlockSet DecisionProblem::add_act(Act act) {
  if (act.ambient_dim() != ambient_dim()) throw Error(ErrorCode::dimension_mismatch, "act vs problem");
  BlockSet m = require_member(act.domain());
  acts_[m].push_back(std::move(act));
  return m;
}

const std::vector<Act>& DecisionProblem::acts_at(const BlockSet& member) const {
  static const std::vector<Act> kNone;
  const auto it = acts_.find(member);
  return it == acts_.end() ? kNone : it->second;
}

std::optional<Act> DecisionProblem::find_act(const BlockSet& member, const std::string& label) const {
  for (const Act& a : acts_at(member)) {
    if (a.label() == label) return a;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

BlockSet smallest_member(const Act& u, const EventAlgebra& alg, const Tolerances& tol) {
  if (u.ambient_dim() != alg.ambient_dim()) throw Error(ErrorCode::dimension_mismatch, "act vs algebra");
  BlockSet out;
  for (std::size_t i = 0; i < alg.atom_count(); ++i) {
    const Matrix& q = alg.generators().block(i).frame();
    if (op_norm(q.adjoint() * u.matrix()) > tol.exact) out.push_back(i);
  }
  return out;
}

Event smallest_event(const Act& u, const EventAlgebra& alg, const Tolerances& tol) {
  return alg.event_of(smallest_member(u, alg, tol));
}

bool RichnessReport::all_pass() const {
  return std::all_of(conditions.begin(), conditions.end(), [](const ConditionResult& c) { return c.pass; });
}

const ConditionResult& RichnessReport::condition(const std::string& name) const {
  for (const auto& c : conditions) {
    if (c.name == name) return c;
  }
  throw Error(ErrorCode::invalid_argument, "no condition named '" + name + "'");
}

RichnessReport check_richness(const DecisionProblem& dp, const Tolerances& tol) {
  const EventAlgebra& alg = dp.algebra();
  ConditionResult restriction{"Restriction", true, {}};
  ConditionResult composition{"Composition", true, {}};
  ConditionResult indolence{"Indolence", true, {}};
  ConditionResult continuation{"Continuation", true, {}};
  ConditionResult irreversibility{"Irreversibility", true, {}};
  RichnessReport report;

  auto fail = [](ConditionResult& c, std::string w) {
    c.pass = false;
    c.witnesses.push_back(std::move(w));
  };

  for (const auto& [e, acts] : dp.acts()) {
    if (acts.empty()) continue;
    const std::string es = alg.describe(e);

    if (!has_act(acts, Act::identity(alg.event_of(e)), tol)) {
      fail(indolence, "E=" + es + " has acts but no identity");
    }

    for (const Act& u : acts) {
      const std::string us = "U=" + u.label();

      for (const BlockSet& f : proper_nonempty_subsets(e)) {
        const Act r = u.restrict_to(alg.event_of(f), tol);
        if (!has_act(dp.acts_at(f), r, tol)) {
          fail(restriction, "E=" + es + " F=" + alg.describe(f) + " " + us);
        }
      }

      const BlockSet o = smallest_member(u, alg, tol);
      const auto& next = dp.acts_at(o);
      if (next.empty()) {
        fail(continuation, "E=" + es + " " + us + " O_U=" + alg.describe(o) + " has no acts");
        report.vacuous.push_back("Composition at E=" + es + " " + us + ": no acts on O_U=" +
                                 alg.describe(o));
      }
      for (const Act& v : next) {
        const Act vu = u.then(v, tol);
        if (!has_act(acts, vu, tol)) {
          fail(composition, "E=" + es + " " + us + " V=" + v.label() + " VU missing");
        }
      }

      for (std::size_t a = 0; a < e.size(); ++a) {
        const BlockSet oa = smallest_member(u.restrict_to(alg.generators().block(e[a]), tol), alg, tol);
        for (std::size_t b = a + 1; b < e.size(); ++b) {
          const BlockSet ob = smallest_member(u.restrict_to(alg.generators().block(e[b]), tol), alg, tol);
          const BlockSet both = set_meet(oa, ob);
          if (!both.empty()) {
            fail(irreversibility, "E=" + es + " " + us + " parts " + alg.generators().label(e[a]) +
                                      "," + alg.generators().label(e[b]) + " both reach " +
                                      alg.describe(both));
          }
        }
      }
    }
  }

  // Empty act sets, including the whole space: these are where the
  // quantified conditions become vacuous.
  if (alg.atom_count() <= 20) {
    for (const BlockSet& m : alg.members()) {
      if (m.empty()) continue;
      if (dp.acts_at(m).empty()) report.empty_act_sets.push_back(alg.describe(m));
    }
  }
  report.full_space_empty = dp.acts_at(alg.everything()).empty();
  if (report.full_space_empty) {
    report.vacuous.push_back("every condition quantifying over acts on the whole space");
  }

  report.conditions = {restriction, composition, indolence, continuation, irreversibility};
  return report;
}

LiftResult compatible_lift(const Act& u1, const Act& u2, const Tolerances& tol) {
  if (u1.ambient_dim() != u2.ambient_dim()) throw Error(ErrorCode::dimension_mismatch, "acts for lift");
  if (!is_orthogonal(u1.domain(), u2.domain(), tol)) {
    throw Error(ErrorCode::invalid_argument, "lift needs orthogonal domains");
  }
  LiftResult r;
  r.defect = op_norm(u1.matrix().adjoint() * u2.matrix());
  if (r.defect > tol.exact) return r;
  const Index n = u1.ambient_dim();
  Matrix frame(n, u1.domain().rank() + u2.domain().rank());
  frame << u1.domain().frame(), u2.domain().frame();
  Matrix m(n, frame.cols());
  m << u1.matrix(), u2.matrix();
  r.act = Act::make(Event::from_frame(std::move(frame), tol), std::move(m),
                    u1.label() + "+" + u2.label(), tol);
  return r;
}

RewardSearchResult reward_act_search(const DecisionProblem& dp, const std::vector<std::size_t>& sources,
                                     const std::vector<std::size_t>& targets, const Tolerances& tol) {
  if (sources.empty() || sources.size() != targets.size()) {
    throw Error(ErrorCode::invalid_argument, "need one target reward per source macrostate");
  }
  const auto& ms = dp.macrostates();
  const auto& rs = dp.rewards();
  std::set<std::size_t> seen;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    if (sources[i] >= ms.size() || targets[i] >= rs.size()) {
      throw Error(ErrorCode::out_of_range, "source or target index out of range");
    }
    if (!seen.insert(sources[i]).second) {
      throw Error(ErrorCode::invalid_argument, "sources must be distinct macrostates");
    }
  }

  RewardSearchResult res;
  std::map<std::size_t, Index> required;
  for (std::size_t i = 0; i < sources.size(); ++i) required[targets[i]] += ms.block(sources[i]).rank();
  bool feasible = true;
  for (const auto& [r, need] : required) {
    res.ledger.push_back({rs.label(r), need, rs.block(r).rank()});
    feasible = feasible && need <= rs.block(r).rank();
  }
  if (!feasible) return res;

  const Index n = dp.ambient_dim();
  Index cols = 0;
  for (std::size_t s : sources) cols += ms.block(s).rank();
  Matrix frame(n, cols);
  Matrix m(n, cols);
  std::map<std::size_t, Index> used;
  Index at = 0;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    const Event& src = ms.block(sources[i]);
    const Matrix& rf = rs.block(targets[i]).frame();
    frame.middleCols(at, src.rank()) = src.frame();
    m.middleCols(at, src.rank()) = rf.middleCols(used[targets[i]], src.rank());
    used[targets[i]] += src.rank();
    at += src.rank();
  }
  res.act = Act::make(Event::from_frame(std::move(frame), tol), std::move(m), "reward", tol);
  return res;
}

Act branching_act(const DecisionProblem& dp, const std::vector<BranchSource>& sources, const Tolerances& tol) {
  if (sources.empty()) throw Error(ErrorCode::invalid_argument, "no branch sources");
  const auto& ms = dp.macrostates();
  const Index n = dp.ambient_dim();

  std::vector<std::size_t> order(sources.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sources[a].macro < sources[b].macro; });

  std::vector<Index> next_free(ms.size(), 0);  // fresh-column cursor per target
  Index cols = 0;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    if (sources[i].macro >= ms.size()) throw Error(ErrorCode::out_of_range, "source macrostate out of range");
    if (i && sources[order[i]].macro == sources[order[i - 1]].macro) {
      throw Error(ErrorCode::invalid_argument, "sources must be distinct macrostates");
    }
    cols += ms.block(sources[i].macro).rank();
  }

  Matrix frame(n, cols);
  Matrix m(n, cols);
  Index at = 0;
  for (std::size_t idx : order) {
    const BranchSource& s = sources[idx];
    const Event& src = ms.block(s.macro);
    const std::string& src_label = ms.label(s.macro);
    if (s.state.size() != n) throw Error(ErrorCode::dimension_mismatch, "branch source state");
    const double norm = s.state.norm();
    if (norm == 0.0) throw Error(ErrorCode::zero_vector, "source state for '" + src_label + "' is zero");
    if (!src.contains(s.state, tol)) {
      throw Error(ErrorCode::state_outside_domain, "source state is not in '" + src_label + "'");
    }
    if (s.targets.empty()) throw Error(ErrorCode::invalid_argument, "source '" + src_label + "' has no targets");
    double total = 0.0;
    std::set<std::size_t> distinct;
    for (const auto& [t, p] : s.targets) {
      if (t >= ms.size()) throw Error(ErrorCode::out_of_range, "target macrostate out of range");
      if (!(p > 0.0)) throw Error(ErrorCode::invalid_argument, "target weights must be positive");
      if (!distinct.insert(t).second) {
        throw Error(ErrorCode::invalid_argument, "targets of '" + src_label + "' repeat a macrostate");
      }
      if (dp.reward_of(t) != dp.reward_of(s.macro)) {
        throw Error(ErrorCode::targets_outside_reward,
                    "target '" + ms.label(t) + "' lies outside the reward of '" + src_label + "'");
      }
      total += p;
    }
    if (std::abs(total - 1.0) > tol.exact) {
      throw Error(ErrorCode::invalid_argument, "target weights of '" + src_label + "' do not sum to 1");
    }

    // Fresh image columns: one per target, then extras cycling through the
    // targets until the source rank is covered.
    const Index k = src.rank();
    const Index jn = static_cast<Index>(s.targets.size());
    const Index width = std::max(k, jn);
    Matrix c(n, width);
    Index filled = 0;
    auto take = [&](std::size_t t) -> bool {
      if (next_free[t] >= ms.block(t).rank()) return false;
      c.col(filled++) = ms.block(t).frame().col(next_free[t]++);
      return true;
    };
    for (const auto& tp : s.targets) {
      if (!take(tp.first)) {
        throw Error(ErrorCode::insufficient_dimension, "target '" + ms.label(tp.first) + "' is exhausted");
      }
    }
    while (filled < width) {
      bool progress = false;
      for (const auto& tp : s.targets) {
        if (filled < width && take(tp.first)) progress = true;
      }
      if (!progress) {
        throw Error(ErrorCode::insufficient_dimension,
                    "targets of '" + src_label + "' cannot absorb a rank-" + std::to_string(k) + " source");
      }
    }

    Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(width);
    for (Index j = 0; j < jn; ++j) amp(j) = std::sqrt(s.targets[static_cast<std::size_t>(j)].second);
    amp.normalize();
    const Matrix b = complete_basis(amp);                                        // width x width
    const Matrix a = complete_basis(src.frame().adjoint() * s.state / norm);     // k x k
    frame.middleCols(at, k) = src.frame();
    m.middleCols(at, k) = c * b.leftCols(k) * a.adjoint();
    at += k;
  }

  Act act = Act::make(Event::from_frame(std::move(frame), tol), std::move(m), "branch", tol);

  for (const BranchSource& s : sources) {
    const StateVector out = act.apply(s.state, tol);
    const double n2 = s.state.squaredNorm();
    for (const auto& [t, p] : s.targets) {
      const double w = (ms.block(t).frame().adjoint() * out).squaredNorm() / n2;
      if (std::abs(w - p) > tol.exact) {
        throw Error(ErrorCode::invalid_argument, "constructed weight " + std::to_string(w) +
                                                     " misses target " + std::to_string(p));
      }
    }
  }
  return act;
}

ErasureResult erasure_pair(const DecisionProblem& dp, std::size_t m, std::size_t n,
                           const StateVector& psi, const StateVector& phi, const Tolerances& tol) {
  const auto& ms = dp.macrostates();
  if (m >= ms.size() || n >= ms.size()) throw Error(ErrorCode::out_of_range, "macrostate index out of range");
  if (m == n) throw Error(ErrorCode::invalid_argument, "erasure needs two different macrostates");
  const std::size_t r = dp.reward_of(m);
  if (dp.reward_of(n) != r) {
    throw Error(ErrorCode::invalid_argument, "'" + ms.label(m) + "' and '" + ms.label(n) +
                                                 "' lie in different rewards");
  }
  const Event& em = ms.block(m);
  const Event& en = ms.block(n);
  if (psi.norm() == 0.0 || phi.norm() == 0.0) throw Error(ErrorCode::zero_vector, "erasure state is zero");
  if (!em.contains(psi, tol) || !en.contains(phi, tol)) {
    throw Error(ErrorCode::state_outside_domain, "erasure states must lie in their macrostates");
  }
  if (std::abs(psi.norm() - phi.norm()) > tol.exact) {
    throw Error(ErrorCode::norm_mismatch, "||psi|| = " + std::to_string(psi.norm()) + " but ||phi|| = " +
                                              std::to_string(phi.norm()));
  }
  const Event reward = dp.rewards().block(r);
  if (reward.rank() < std::max(em.rank(), en.rank())) {
    throw Error(ErrorCode::no_room_in_reward, "reward '" + dp.rewards().label(r) + "' is too small");
  }

  const BlockSet in_r = dp.reward_member(r);
  std::size_t lowest = in_r.front();
  for (std::size_t i : in_r) {
    if (ms.label(i) < ms.label(lowest)) lowest = i;
  }
  const StateVector t = ms.block(lowest).frame().col(0);

  Act u = isometry_sending(em, reward, psi.normalized(), t, "U", tol);
  Act v = isometry_sending(en, reward, phi.normalized(), t, "V", tol);
  LiftResult lift = compatible_lift(u, v, tol);
  return ErasureResult{std::move(u), std::move(v), t, std::move(lift)};
}

}  // namespace branchlab
