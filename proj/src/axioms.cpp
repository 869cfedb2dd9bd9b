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

#include "branchlab/axioms.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "branchlab/random.hpp"

namespace branchlab {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

int compare(double a, double b) {
  if (a > b + kIndifference) return 1;
  if (a < b - kIndifference) return -1;
  return 0;
}

const char* relation(int c) { return c > 0 ? ">" : (c < 0 ? "<" : "~"); }

double utility_of(const Strategy& s, const DecisionProblem& dp, std::size_t reward) {
  const auto it = s.utilities.find(dp.rewards().label(reward));
  if (it == s.utilities.end()) {
    throw Error(ErrorCode::invalid_argument, "no utility for reward '" + dp.rewards().label(reward) + "'");
  }
  return it->second;
}

// Every member with at least one act, with sampled unit states. The first
// state is the normalized sum of the frame columns, so even samples=1 is
// reproducible without the generator.
std::vector<StateVector> sample_states(const Event& e, std::size_t count, Rng& rng) {
  std::vector<StateVector> out;
  if (count == 0) return out;
  StateVector first = e.frame().rowwise().sum();
  out.push_back(first / first.norm());
  while (out.size() < count) out.push_back(random_state_in(e, rng));
  return out;
}

AxiomReport make_report(std::string axiom, const Strategy& s) {
  AxiomReport r;
  r.axiom = std::move(axiom);
  r.strategy = s.name();
  return r;
}

void add_witness(AxiomReport& r, std::string w, std::size_t cap = 64) {
  r.pass = false;
  if (r.witnesses.size() < cap) r.witnesses.push_back(std::move(w));
}

}  // namespace

std::string_view to_string(StrategyKind k) {
  switch (k) {
    case StrategyKind::born_eu: return "born_eu";
    case StrategyKind::counting_eu: return "counting_eu";
    case StrategyKind::coarse_count_eu: return "coarse_count_eu";
    case StrategyKind::minimax: return "minimax";
  }
  return "unknown";
}

StrategyKind strategy_from_string(std::string_view name) {
  for (StrategyKind k : {StrategyKind::born_eu, StrategyKind::counting_eu, StrategyKind::coarse_count_eu,
                         StrategyKind::minimax}) {
    if (to_string(k) == name) return k;
  }
  throw Error(ErrorCode::invalid_argument, "unknown strategy '" + std::string(name) + "'");
}

double Strategy::max_abs_utility() const {
  double m = 0.0;
  for (const auto& [k, u] : utilities) m = std::max(m, std::abs(u));
  return m;
}

double evaluate(const Strategy& s, const DecisionProblem& dp, const StateVector& psi, const Act& u,
                const Tolerances& tol) {
  const double n2 = psi.squaredNorm();
  if (n2 == 0.0) throw Error(ErrorCode::zero_vector, "cannot evaluate at the zero state");
  const StateVector out = u.apply(psi, tol);
  const auto& ms = dp.macrostates();
  const double norm = std::sqrt(n2);

  double value = 0.0;
  switch (s.kind) {
    case StrategyKind::born_eu: {
      for (std::size_t r = 0; r < dp.rewards().size(); ++r) {
        const double w = (dp.rewards().block(r).frame().adjoint() * out).squaredNorm() / n2;
        value += w * utility_of(s, dp, r);
      }
      break;
    }
    case StrategyKind::counting_eu:
    case StrategyKind::minimax: {
      double sum = 0.0;
      double lowest = std::numeric_limits<double>::infinity();
      std::size_t count = 0;
      for (std::size_t i = 0; i < ms.size(); ++i) {
        if ((ms.block(i).frame().adjoint() * out).norm() / norm > s.threshold) {
          const double ui = utility_of(s, dp, dp.reward_of(i));
          sum += ui;
          lowest = std::min(lowest, ui);
          ++count;
        }
      }
      if (count == 0) throw Error(ErrorCode::invalid_argument, "no branch clears the counting threshold");
      value = s.kind == StrategyKind::minimax ? lowest : sum / static_cast<double>(count);
      break;
    }
    case StrategyKind::coarse_count_eu: {
      std::map<std::string, double> cell_weight;
      std::map<std::string, std::size_t> cell_reward;
      for (std::size_t i = 0; i < ms.size(); ++i) {
        const auto g = s.grain.find(ms.label(i));
        const std::string cell = g == s.grain.end() ? ms.label(i) : g->second;
        const auto [it, fresh] = cell_reward.emplace(cell, dp.reward_of(i));
        if (!fresh && it->second != dp.reward_of(i)) {
          throw Error(ErrorCode::invalid_argument, "grain cell '" + cell + "' straddles two rewards");
        }
        cell_weight[cell] += (ms.block(i).frame().adjoint() * out).squaredNorm();
      }
      double sum = 0.0;
      std::size_t count = 0;
      for (const auto& [cell, w] : cell_weight) {
        if (std::sqrt(w) / norm > s.threshold) {
          sum += utility_of(s, dp, cell_reward.at(cell));
          ++count;
        }
      }
      if (count == 0) throw Error(ErrorCode::invalid_argument, "no grain cell clears the counting threshold");
      value = sum / static_cast<double>(count);
      break;
    }
  }
  const auto cost = s.act_costs.find(u.label());
  if (cost != s.act_costs.end()) value -= cost->second;
  return value;
}

// ---------------------------------------------------------------------------
// Ordering

PreferenceOrder PreferenceOrder::from_values(const std::vector<std::pair<std::string, double>>& values) {
  PreferenceOrder po;
  for (const auto& [a, va] : values) {
    po.acts.push_back(a);
    for (const auto& [b, vb] : values) {
      if (compare(va, vb) >= 0) po.weak.emplace_back(a, b);
    }
  }
  return po;
}

AxiomReport check_ordering(const PreferenceOrder& po) {
  AxiomReport r;
  r.axiom = "Ordering";
  const std::set<std::pair<std::string, std::string>> rel(po.weak.begin(), po.weak.end());
  auto ge = [&](const std::string& a, const std::string& b) { return rel.count({a, b}) > 0; };
  for (const auto& a : po.acts) {
    for (const auto& b : po.acts) {
      ++r.checked;
      if (!ge(a, b) && !ge(b, a)) add_witness(r, "incomparable: " + a + ", " + b);
    }
  }
  for (const auto& a : po.acts) {
    for (const auto& b : po.acts) {
      if (!ge(a, b)) continue;
      for (const auto& c : po.acts) {
        if (ge(b, c) && !ge(a, c)) {
          std::string w = "intransitive: " + a + ">=" + b + ", " + b + ">=" + c + ", not " + a + ">=" + c;
          if (ge(c, a) && !ge(b, a) && !ge(c, b)) w += " (cycle " + a + ">" + b + ">" + c + ">" + a + ")";
          add_witness(r, std::move(w));
        }
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// State Supervenience

AxiomReport check_state_supervenience(const DecisionProblem& dp, const Strategy& s,
                                      const SamplingOptions& opts, const Tolerances& tol) {
  AxiomReport r = make_report("StateSupervenience", s);
  Rng rng(opts.seed);
  const auto& alg = dp.algebra();
  const Event full = Event::full(dp.ambient_dim());
  std::size_t shift = 0;
  for (const auto& [e, acts] : dp.acts()) {
    if (acts.size() < 2) continue;
    const Event ev = alg.event_of(e);
    for (const StateVector& psi : sample_states(ev, opts.samples, rng)) {
      // The second context lives in another macrostate (cycling through
      // them), with its own acts built to land on the same final states.
      const std::size_t m2 = (e.front() + 1 + shift++) % alg.atom_count();
      const Event& e2 = alg.generators().block(m2);
      const StateVector psi2 = random_state_in(e2, rng);
      for (std::size_t i = 0; i < acts.size(); ++i) {
        for (std::size_t j = i + 1; j < acts.size(); ++j) {
          const Act& u = acts[i];
          const Act& v = acts[j];
          const StateVector uo = u.apply(psi, tol);
          const StateVector vo = v.apply(psi, tol);
          const Act u2 = isometry_sending(e2, full, psi2, uo, u.label() + "'", tol);
          const Act v2 = isometry_sending(e2, full, psi2, vo, v.label() + "'", tol);
          const int c1 = compare(evaluate(s, dp, psi, u, tol), evaluate(s, dp, psi, v, tol));
          const int c2 = compare(evaluate(s, dp, psi2, u2, tol), evaluate(s, dp, psi2, v2, tol));
          ++r.checked;
          if (c1 != c2) {
            add_witness(r, "at " + alg.describe(e) + ": " + u.label() + " " + relation(c1) + " " + v.label() +
                               " but at " + alg.generators().label(m2) + ": " + u2.label() + " " +
                               relation(c2) + " " + v2.label() + " with identical final states");
          }
        }
      }
    }
  }
  r.numerics["checked"] = static_cast<double>(r.checked);
  return r;
}

// ---------------------------------------------------------------------------
// Diachronic Consistency

AxiomReport check_diachronic_consistency(const DecisionProblem& dp, const Strategy& s,
                                         const DiachronicScenario& sc, const Tolerances& tol) {
  AxiomReport r = make_report("DiachronicConsistency", s);
  const auto& alg = dp.algebra();
  const BlockSet o = smallest_member(sc.u, alg, tol);
  const Event oe = alg.event_of(o);

  std::vector<BlockSet> parts = sc.parts;
  if (parts.empty()) {
    for (std::size_t i : o) parts.push_back({i});
  }
  BlockSet covered;
  for (const BlockSet& p : parts) {
    if (!set_meet(covered, p).empty()) throw Error(ErrorCode::invalid_partition, "parts of O_U overlap");
    covered = set_join(covered, p);
  }
  if (covered != o) throw Error(ErrorCode::invalid_partition, "parts do not cover O_U = " + alg.describe(o));

  const StateVector out = sc.u.apply(sc.psi, tol);
  std::vector<StateVector> phi;
  std::vector<bool> null;
  double min_nonnull = std::numeric_limits<double>::infinity();
  for (const BlockSet& p : parts) {
    phi.push_back(alg.event_of(p).project(out));
    null.push_back(phi.back().norm() <= tol.exact);
    if (!null.back()) min_nonnull = std::min(min_nonnull, phi.back().squaredNorm() / sc.psi.squaredNorm());
  }

  const std::vector<Act>& conts = sc.continuations.empty() ? dp.acts_at(o) : sc.continuations;
  for (const Act& v : conts) {
    if (!same_subspace(v.domain(), oe, tol)) {
      throw Error(ErrorCode::invalid_argument, "continuation '" + v.label() + "' is not an act on O_U");
    }
  }
  std::vector<double> composite;
  for (const Act& v : conts) {
    const Act vu = sc.u.then(v, tol);
    composite.push_back(evaluate(s, dp, sc.psi, vu, tol));
    r.numerics["value[" + vu.label() + "]"] = composite.back();
  }

  for (std::size_t a = 0; a < conts.size(); ++a) {
    for (std::size_t b = 0; b < conts.size(); ++b) {
      if (a == b) continue;
      bool all_weak = true;
      bool any_strict = false;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        if (null[i]) continue;
        const Event pe = alg.event_of(parts[i]);
        const int c = compare(evaluate(s, dp, phi[i], conts[a].restrict_to(pe, tol), tol),
                              evaluate(s, dp, phi[i], conts[b].restrict_to(pe, tol), tol));
        if (c < 0) all_weak = false;
        if (c > 0) any_strict = true;
      }
      if (!all_weak) continue;
      ++r.checked;
      const int c = compare(composite[a], composite[b]);
      const std::string pair = conts[a].label() + " vs " + conts[b].label() + " after " + sc.u.label();
      if (c < 0) {
        add_witness(r, pair + ": branchwise >= but composite " + fmt(composite[a]) + " < " + fmt(composite[b]));
      } else if (any_strict && c == 0) {
        add_witness(r, pair + ": branchwise > somewhere but composite indifferent at " + fmt(composite[a]));
      }
    }
  }
  std::size_t nulls = 0;
  for (bool n : null) nulls += n ? 1 : 0;
  r.numerics["null_parts"] = static_cast<double>(nulls);
  if (std::isfinite(min_nonnull)) r.numerics["min_nonnull_weight"] = min_nonnull;
  return r;
}

AxiomReport check_diachronic_consistency(const DecisionProblem& dp, const Strategy& s,
                                         const SamplingOptions& opts, const Tolerances& tol) {
  AxiomReport r = make_report("DiachronicConsistency", s);
  Rng rng(opts.seed);
  const auto& alg = dp.algebra();
  std::size_t scenarios = 0;
  for (const auto& [e, acts] : dp.acts()) {
    const Event ev = alg.event_of(e);
    for (const StateVector& psi : sample_states(ev, opts.samples, rng)) {
      for (const Act& u : acts) {
        if (dp.acts_at(smallest_member(u, alg, tol)).size() < 2) continue;
        ++scenarios;
        const AxiomReport sub = check_diachronic_consistency(dp, s, DiachronicScenario{e, psi, u, {}, {}}, tol);
        r.checked += sub.checked;
        for (const auto& w : sub.witnesses) add_witness(r, "at " + alg.describe(e) + ": " + w);
        if (!sub.pass) r.pass = false;
      }
    }
  }
  r.numerics["scenarios"] = static_cast<double>(scenarios);
  r.numerics["checked"] = static_cast<double>(r.checked);
  return r;
}

// ---------------------------------------------------------------------------
// Branching Indifference

AxiomReport check_branching_indifference(const DecisionProblem& dp, const Strategy& s,
                                         const SamplingOptions& opts, const Tolerances& tol) {
  AxiomReport r = make_report("BranchingIndifference", s);
  Rng rng(opts.seed);
  const auto& alg = dp.algebra();
  std::size_t direct = 0;
  std::size_t composite = 0;

  auto within_reward = [&](const Act& a, std::size_t m) {
    const Event& reward = dp.rewards().block(dp.reward_of(m));
    return op_norm(a.matrix() - reward.projector() * a.matrix()) <= tol.exact;
  };

  for (std::size_t m = 0; m < alg.atom_count(); ++m) {
    const auto& acts = dp.acts_at({m});
    if (acts.empty()) continue;
    const Event& me = alg.generators().block(m);
    const Act one = Act::identity(me);
    const Event& reward = dp.rewards().block(dp.reward_of(m));
    for (const StateVector& psi : sample_states(me, opts.samples, rng)) {
      const double base = evaluate(s, dp, psi, one, tol);
      for (const Act& u : acts) {
        if (!reward.contains(u.apply(psi, tol), tol)) continue;
        ++direct;
        const double v = evaluate(s, dp, psi, u, tol);
        if (compare(v, base) != 0) {
          add_witness(r, "at " + alg.generators().label(m) + ": " + u.label() + " = " + fmt(v) + " vs 1 = " + fmt(base));
        }
      }
    }
  }

  for (const auto& [e, acts] : dp.acts()) {
    const Event ev = alg.event_of(e);
    const auto states = sample_states(ev, opts.samples, rng);
    for (const Act& w : acts) {
      const BlockSet o = smallest_member(w, alg, tol);
      for (std::size_t m : o) {
        for (const Act& sub : dp.acts_at({m})) {
          if (!within_reward(sub, m)) continue;
          if (sub.same_as(Act::identity(alg.generators().block(m)), tol)) continue;
          const BlockSet rest = set_meet(o, set_complement({m}, alg.atom_count()));
          std::optional<Act> lifted = sub;
          if (!rest.empty()) lifted = compatible_lift(sub, Act::identity(alg.event_of(rest)), tol).act;
          if (!lifted) continue;
          const Act after = w.then(*lifted, tol);
          for (const StateVector& psi : states) {
            ++composite;
            const double a = evaluate(s, dp, psi, after, tol);
            const double b = evaluate(s, dp, psi, w, tol);
            if (compare(a, b) != 0) {
              add_witness(r, "composite at " + alg.describe(e) + ": " + w.label() + " then " + sub.label() + "@" +
                                 alg.generators().label(m) + " = " + fmt(a) + " vs " + w.label() + " = " + fmt(b));
            }
          }
        }
      }
    }
  }
  r.checked = direct + composite;
  r.numerics["direct_checked"] = static_cast<double>(direct);
  r.numerics["composite_checked"] = static_cast<double>(composite);
  return r;
}

// ---------------------------------------------------------------------------
// Solution Continuity

Act perturb_act(const Act& u, const Matrix& hermitian, double delta, const Tolerances& tol) {
  if (delta < 0.0 || delta > 2.0) throw Error(ErrorCode::invalid_argument, "perturbation size must lie in [0, 2]");
  if (delta == 0.0) return u;
  // Diagonalize once; exp(i t H) U = V e^{i t D} (V^dagger U).
  const Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian);
  const Matrix& vecs = es.eigenvectors();
  const Matrix vu = vecs.adjoint() * u.matrix();
  auto moved = [&](double t) -> Matrix {
    const Eigen::VectorXcd phases = (Complex(0.0, t) * es.eigenvalues().cast<Complex>()).array().exp().matrix();
    return vecs * (phases.asDiagonal() * vu);
  };
  auto dist = [&](double t) { return op_norm(moved(t) - u.matrix()); };
  double lo = 0.0;
  double hi = delta;
  while (dist(hi) < delta) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e6) throw Error(ErrorCode::invalid_argument, "generator cannot move the act by delta");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (dist(mid) < delta ? lo : hi) = mid;
  }
  return Act::make(u.domain(), moved(hi), u.label(), tol);
}

AxiomReport check_solution_continuity(const DecisionProblem& dp, const Strategy& s, const StateVector& psi,
                                      const Act& u, const Act& v, const ContinuityOptions& opts,
                                      const Tolerances& tol) {
  AxiomReport r = make_report("SolutionContinuity", s);
  const double vu = evaluate(s, dp, psi, u, tol);
  const double vv = evaluate(s, dp, psi, v, tol);
  const bool swapped = vu < vv;
  const Act& hi = swapped ? v : u;
  const Act& lo = swapped ? u : v;
  const double gap = std::abs(vu - vv);
  const double bound = 4.0 * opts.delta * s.max_abs_utility();
  r.numerics["gap"] = gap;
  r.numerics["bound"] = bound;
  if (gap <= kIndifference) {
    r.numerics["indifferent"] = 1.0;
    return r;
  }
  Rng rng(opts.seed);
  double min_gap = gap;
  const Index n = dp.ambient_dim();
  for (std::size_t k = 0; k < opts.perturbations; ++k) {
    const Act hp = perturb_act(hi, random_hermitian(n, rng), opts.delta, tol);
    const Act lp = perturb_act(lo, random_hermitian(n, rng), opts.delta, tol);
    ++r.checked;
    min_gap = std::min(min_gap, evaluate(s, dp, psi, hp, tol) - evaluate(s, dp, psi, lp, tol));
  }
  const bool stable = min_gap > kIndifference;
  r.numerics["min_gap"] = min_gap;
  r.numerics["stable"] = stable ? 1.0 : 0.0;
  if (!stable) {
    const std::string w = hi.label() + " > " + lo.label() + " by " + fmt(gap) + " flips to " + fmt(min_gap) +
                          " within delta " + fmt(opts.delta);
    if (gap > bound) {
      add_witness(r, w);
    } else {
      r.witnesses.push_back("below bound: " + w);
    }
  }
  return r;
}

AxiomReport check_solution_continuity(const DecisionProblem& dp, const Strategy& s,
                                      const SamplingOptions& sampling, const ContinuityOptions& opts,
                                      const Tolerances& tol) {
  AxiomReport r = make_report("SolutionContinuity", s);
  Rng rng(sampling.seed);
  const auto& alg = dp.algebra();
  std::size_t pairs = 0;
  std::size_t above = 0;
  std::size_t unstable = 0;
  double min_gap = std::numeric_limits<double>::infinity();
  std::uint64_t sub_seed = opts.seed;
  for (const auto& [e, acts] : dp.acts()) {
    if (acts.size() < 2) continue;
    for (const StateVector& psi : sample_states(alg.event_of(e), sampling.samples, rng)) {
      for (std::size_t i = 0; i < acts.size(); ++i) {
        for (std::size_t j = i + 1; j < acts.size(); ++j) {
          ContinuityOptions o = opts;
          o.seed = sub_seed++;
          const AxiomReport sub = check_solution_continuity(dp, s, psi, acts[i], acts[j], o, tol);
          if (sub.numerics.count("indifferent")) continue;
          ++pairs;
          const bool over = sub.numerics.at("gap") > sub.numerics.at("bound");
          if (over) {
            ++above;
            min_gap = std::min(min_gap, sub.numerics.at("min_gap"));
          }
          if (sub.numerics.at("stable") == 0.0) ++unstable;
          r.checked += sub.checked;
          for (const auto& w : sub.witnesses) {
            if (!sub.pass) {
              add_witness(r, "at " + alg.describe(e) + ": " + w);
            }
          }
        }
      }
    }
  }
  r.numerics["pairs"] = static_cast<double>(pairs);
  r.numerics["pairs_above_bound"] = static_cast<double>(above);
  r.numerics["unstable"] = static_cast<double>(unstable);
  r.numerics["delta"] = opts.delta;
  if (std::isfinite(min_gap)) r.numerics["min_gap_above_bound"] = min_gap;
  return r;
}

// ---------------------------------------------------------------------------
// Act Nondegeneracy

AxiomReport check_act_nondegeneracy(const DecisionProblem& dp, const Strategy& s,
                                    const std::vector<StateVector>& states, const SamplingOptions& opts,
                                    const Tolerances& tol) {
  AxiomReport r = make_report("ActNondegeneracy", s);
  r.pass = false;
  Rng rng(opts.seed);
  const auto& alg = dp.algebra();
  for (const auto& [e, acts] : dp.acts()) {
    if (acts.size() < 2) continue;
    const Event ev = alg.event_of(e);
    std::vector<StateVector> tries;
    for (const StateVector& st : states) {
      if (st.size() == dp.ambient_dim() && st.norm() > 0 && ev.contains(st, tol)) tries.push_back(st);
    }
    for (const StateVector& st : sample_states(ev, opts.samples, rng)) tries.push_back(st);
    for (const StateVector& psi : tries) {
      for (std::size_t i = 0; i < acts.size(); ++i) {
        for (std::size_t j = i + 1; j < acts.size(); ++j) {
          ++r.checked;
          const double a = evaluate(s, dp, psi, acts[i], tol);
          const double b = evaluate(s, dp, psi, acts[j], tol);
          if (compare(a, b) != 0) {
            r.pass = true;
            r.witnesses.push_back("at " + alg.describe(e) + ": " + acts[i].label() + " = " + fmt(a) + " vs " +
                                  acts[j].label() + " = " + fmt(b));
            r.numerics["checked"] = static_cast<double>(r.checked);
            return r;
          }
        }
      }
    }
  }
  r.witnesses.push_back("indifferent between every pair of acts examined");
  r.numerics["checked"] = static_cast<double>(r.checked);
  return r;
}

// ---------------------------------------------------------------------------
// Macrostate Indifference

AxiomReport check_macrostate_indifference(const DecisionProblem& dp, const Strategy& s,
                                          const std::vector<MacrostateTuple>& tuples, const Tolerances& tol) {
  AxiomReport r = make_report("MacrostateIndifference", s);
  const auto& alg = dp.algebra();
  std::size_t skipped = 0;
  for (std::size_t t = 0; t < tuples.size(); ++t) {
    const MacrostateTuple& x = tuples[t];
    const BlockSet ou = smallest_member(x.u, alg, tol);
    const BlockSet ou2 = smallest_member(x.u2, alg, tol);
    const BlockSet ov = smallest_member(x.v, alg, tol);
    const BlockSet ov2 = smallest_member(x.v2, alg, tol);
    // Each pair must land inside one common macrostate (and so one reward).
    const bool hyp = ou.size() == 1 && ou == ou2 && ov.size() == 1 && ov == ov2;
    if (!hyp) {
      ++skipped;
      continue;
    }
    ++r.checked;
    const bool lhs = compare(evaluate(s, dp, x.psi, x.u, tol), evaluate(s, dp, x.psi, x.v, tol)) >= 0;
    const bool rhs = compare(evaluate(s, dp, x.psi2, x.u2, tol), evaluate(s, dp, x.psi2, x.v2, tol)) >= 0;
    if (lhs != rhs) {
      add_witness(r, "tuple " + std::to_string(t) + ": " + x.u.label() + (lhs ? " >= " : " < ") + x.v.label() +
                         " but " + x.u2.label() + (rhs ? " >= " : " < ") + x.v2.label());
    }
  }
  r.numerics["skipped"] = static_cast<double>(skipped);
  return r;
}

// ---------------------------------------------------------------------------

std::vector<AxiomReport> run_axiom_suite(const DecisionProblem& dp, const Strategy& s,
                                         const SuiteOptions& opts, const Tolerances& tol) {
  std::vector<AxiomReport> out;

  AxiomReport ordering = make_report("Ordering", s);
  {
    Rng rng(opts.sampling.seed);
    for (const auto& [e, acts] : dp.acts()) {
      for (const StateVector& psi : sample_states(dp.algebra().event_of(e), opts.sampling.samples, rng)) {
        std::vector<std::pair<std::string, double>> values;
        for (const Act& a : acts) values.emplace_back(a.label(), evaluate(s, dp, psi, a, tol));
        const AxiomReport sub = check_ordering(PreferenceOrder::from_values(values));
        ordering.checked += sub.checked;
        for (const auto& w : sub.witnesses) add_witness(ordering, w);
      }
    }
  }
  out.push_back(std::move(ordering));
  out.push_back(check_state_supervenience(dp, s, opts.sampling, tol));
  out.push_back(check_branching_indifference(dp, s, opts.sampling, tol));
  out.push_back(check_diachronic_consistency(dp, s, opts.sampling, tol));
  out.push_back(check_solution_continuity(dp, s, opts.sampling, opts.continuity, tol));
  out.push_back(check_act_nondegeneracy(dp, s, {}, opts.sampling, tol));
  if (opts.include_macrostate_indifference) {
    out.push_back(check_macrostate_indifference(dp, s, opts.macrostate_tuples, tol));
  }
  return out;
}

}  // namespace branchlab
