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

// Acceptance run: one PASS/FAIL line per criterion. Tolerances are fixed
// here and nowhere else.

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

#include "branchlab/axioms.hpp"
#include "branchlab/cli.hpp"
#include "branchlab/measures.hpp"
#include "branchlab/scenarios.hpp"
#include "support.hpp"

using namespace branchlab;
using namespace branchlab::testing;

namespace {

constexpr double kBornExact = 1e-12;
constexpr double kProfileSum = 1e-10;
constexpr double kOverlap = 1e-9;
constexpr double kAdditivity = 1e-9;
constexpr double kDefect = 1e-10;
constexpr double kBranchWeight = 1e-12;
constexpr double kTailFloor = 1e-12;
constexpr double kAbcExact = 1e-9;
constexpr double kReconstruct = 1e-9;
constexpr double kPermutationGap = 0.1;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Tally {
 public:
  void fail(const std::string& why) {
    if (pass_) first_ = why;
    pass_ = false;
  }
  void expect(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
  Outcome done(std::string detail) const { return {pass_, pass_ ? std::move(detail) : first_}; }

 private:
  bool pass_ = true;
  std::string first_;
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

Event coord(Index n, const std::vector<Index>& idx) {
  std::vector<StateVector> v;
  for (Index i : idx) v.push_back(basis_vec(n, i));
  return span(v);
}

// ---------------------------------------------------------------------------

Outcome born_weights_criterion() {
  Tally t;
  StateVector psi(2);
  psi << 0.6, 0.8;
  const BranchProfile p = born_weights(psi, Partition::standard_basis(2, "s"));
  t.expect(std::abs(p.weight("s0") - 0.36) <= kBornExact && std::abs(p.weight("s1") - 0.64) <= kBornExact,
           "(3,4)/5 profile off");
  Rng rng(101);
  double worst = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const Index n = static_cast<Index>(uniform_index(rng, 1, 16));
    const Matrix u = random_unitary(n, rng);
    std::vector<Event> blocks;
    std::vector<std::string> labels;
    for (Index at = 0; at < n;) {
      const Index k = std::min<Index>(n - at, static_cast<Index>(uniform_index(rng, 1, 4)));
      blocks.push_back(Event::from_frame(u.middleCols(at, k)));
      labels.push_back("b" + std::to_string(blocks.size()));
      at += k;
    }
    const StateVector s = random_state(n, rng) * uniform(rng, 0.1, 10.0);
    worst = std::max(worst, std::abs(born_weights(s, Partition::make(blocks, labels)).total() - 1.0));
  }
  t.expect(worst <= kProfileSum, "profile sum off by " + fmt(worst));
  return t.done("(3,4)/5 -> {0.36, 0.64}; 500 sums within " + fmt(worst));
}

Outcome branching_implies_consistency() {
  Tally t;
  Rng rng(102);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const Index s = trial % 4 == 3 ? 3 : 2;
    const std::size_t n = s == 3 ? uniform_index(rng, 1, 2) : uniform_index(rng, 1, 3);
    const HistorySpace hs = record_space(rng, s, n, RecordCells::system_and_records);
    if (!is_branching(hs)) {
      t.fail("generated space " + std::to_string(trial) + " is not branching");
      continue;
    }
    worst = std::max(worst, consistency_report(hs).max_overlap);
  }
  t.expect(worst <= kOverlap, "max_overlap " + fmt(worst));
  return t.done("200 branching spaces, worst max_overlap " + fmt(worst));
}

Outcome bc_refine_criterion() {
  Tally t;
  Rng rng(103);
  for (int trial = 0; trial < 200; ++trial) {
    const HistorySpace hs = record_space(rng, 2, uniform_index(rng, 1, 3), RecordCells::system_only);
    if (!consistency_report(hs).consistent) {
      t.fail("generated space " + std::to_string(trial) + " is not consistent");
      continue;
    }
    const HistorySpace ref = bc_refine(hs);
    t.expect(is_branching(ref), "refinement " + std::to_string(trial) + " not branching");
    t.expect(consistency_report(ref).consistent, "refinement " + std::to_string(trial) + " not consistent");
    t.expect(is_refinement(ref.sample_spaces().back().to_partition(), hs.sample_spaces().back().to_partition()),
             "refinement " + std::to_string(trial) + " does not refine the final sample space");
  }
  return t.done("200 consistent spaces refined to branching, consistent refinements");
}

Outcome algebra_failure_criterion() {
  Tally t;
  const AlgebraFailureDemo d = build_algebra_failure();
  const AlgebraMembershipReport r = refinement_in_algebra(d.hs, d.algebra);
  t.expect(!r.all_members, "all branch lines reported as members");
  t.expect(!r.missing.empty(), "no witness");
  // Oracle: a line is a member iff some member's projector fixes it and has
  // rank one; check each witness directly.
  for (const History& h : r.missing) {
    const StateVector v = chain_vector(d.hs, h);
    const StateVector b = branch_vector(d.hs, h);
    const StateVector u = b / b.norm();
    bool found = false;
    for (const BlockSet& m : d.algebra.members()) {
      const Event e = d.algebra.event_of(m);
      if (e.rank() == 1 && (e.projector() * u - u).norm() <= 1e-9) found = true;
    }
    t.expect(!found, "witness " + d.hs.describe(h) + " is in fact a member");
    t.expect(v.norm() > 1e-6, "witness has no weight");
  }
  return t.done(std::to_string(r.missing.size()) + " witness(es), e.g. " +
                (r.missing.empty() ? std::string("-") : d.hs.describe(r.missing[0])));
}

Outcome additivity_criterion() {
  Tally t;
  Rng rng(105);
  double worst = 0.0;
  std::size_t coarse_histories = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const HistorySpace hs = record_space(rng, 2, uniform_index(rng, 1, 2),
                                         trial % 2 ? RecordCells::system_only : RecordCells::system_and_records);
    if (!consistency_report(hs).consistent) {
      t.fail("generated space not consistent");
      continue;
    }
    for (std::size_t k = 0; k < hs.time_count(); ++k) {
      const std::size_t cells = hs.sample_space(k).size();
      if (cells < 2) continue;
      std::vector<std::size_t> group(cells);
      for (std::size_t c = 0; c < cells; ++c) group[c] = c == 0 ? 0 : uniform_index(rng, 0, 1);
      if (std::count(group.begin(), group.end(), 1u) == 0) group.back() = 1;
      const Coarsened co = coarsen(hs, k, group);
      const double lib = additivity_check(hs, co.space, co.mapping).max_violation;
      worst = std::max(worst, lib);
      // Oracle over every coarse history.
      const auto fine_all = all_histories(hs);
      for (const History& ch : all_histories(co.space)) {
        ++coarse_histories;
        double sum = 0.0;
        for (const History& fh : fine_all) {
          bool maps = true;
          for (std::size_t s = 0; s < fh.size(); ++s) maps = maps && co.mapping[s][fh[s]] == ch[s];
          if (maps) sum += chain_vector(hs, fh).squaredNorm();
        }
        worst = std::max(worst, std::abs(chain_vector(co.space, ch).squaredNorm() - sum));
      }
    }
  }
  t.expect(worst <= kAdditivity, "discrepancy " + fmt(worst));
  return t.done(std::to_string(coarse_histories) + " coarse histories, worst " + fmt(worst));
}

Outcome erasure_criterion() {
  Tally t;
  const ErasureDemo d = build_erasure_contradiction();
  t.expect(!d.lift.feasible(), "canonical lift feasible");
  t.expect(std::abs(d.lift.defect - 1.0) <= kDefect, "canonical defect " + fmt(d.lift.defect));

  Rng rng(106);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = static_cast<Index>(uniform_index(rng, 3, 8));
    const Matrix basis = random_unitary(n, rng);
    const StateVector psi = basis.col(0);
    const StateVector phi = basis.col(1);
    const Event m = Event::line(psi);
    const Event nn = Event::line(phi);
    Act u = Act::identity(m);
    Act v = Act::identity(nn);
    if (trial % 2 == 0) {
      // Erasure-style: both land on one vector.
      const StateVector target = random_state(n, rng);
      u = isometry_sending(m, Event::full(n), psi, target, "u");
      v = isometry_sending(nn, Event::full(n), phi, target, "u");
    } else {
      u = isometry_sending(m, Event::full(n), psi, random_state(n, rng), "w");
      v = isometry_sending(nn, Event::full(n), phi, random_state(n, rng), "w");
    }
    const double oracle = std::abs(u.apply(psi).dot(v.apply(phi)) - psi.dot(phi));
    worst = std::max(worst, std::abs(compatible_lift(u, v).defect - oracle));
  }
  t.expect(worst <= kDefect, "defect vs |<U psi, V phi> - <psi, phi>| off by " + fmt(worst));
  return t.done("defect " + fmt(d.lift.defect) + "; 100 instances within " + fmt(worst));
}

// Every way to split `blocks` labelled blocks into reward groups.
void set_partitions(std::size_t blocks, std::vector<std::size_t>& cur, std::size_t used,
                    const std::function<void(const std::vector<std::size_t>&, std::size_t)>& visit) {
  if (cur.size() == blocks) {
    visit(cur, used);
    return;
  }
  for (std::size_t g = 0; g <= used; ++g) {
    cur.push_back(g);
    set_partitions(blocks, cur, std::max(used, g + 1), visit);
    cur.pop_back();
  }
}

void compositions(Index total_max, std::size_t parts, std::vector<Index>& cur,
                  const std::function<void(const std::vector<Index>&)>& visit) {
  if (cur.size() == parts) {
    visit(cur);
    return;
  }
  Index used = 0;
  for (Index r : cur) used += r;
  const Index left = static_cast<Index>(parts - cur.size());
  for (Index r = 1; used + r + (left - 1) <= total_max; ++r) {
    cur.push_back(r);
    compositions(total_max, parts, cur, visit);
    cur.pop_back();
  }
}

Outcome reward_availability_criterion() {
  Tally t;
  const RewardAvailabilityDemo d = build_reward_availability_contradiction();
  t.expect(!d.result.feasible(), "full-partition scenario feasible");
  t.expect(d.result.ledger.size() == 1 && d.result.ledger[0].required == 8 && d.result.ledger[0].available == 4,
           "ledger is not (8, 4)");

  // Every rank structure (<= 5 blocks, dim <= 10) and every grouping of the
  // blocks into rewards; source/target choices drawn per structure.
  Rng rng(107);
  std::size_t instances = 0;
  std::size_t feasible = 0;
  for (std::size_t blocks = 1; blocks <= 5; ++blocks) {
    std::vector<Index> cur;
    compositions(10, blocks, cur, [&](const std::vector<Index>& ranks) {
      Index n = 0;
      for (Index r : ranks) n += r;
      std::vector<Event> ev;
      std::vector<std::string> labels;
      Index at = 0;
      for (std::size_t i = 0; i < blocks; ++i) {
        std::vector<Index> idx(static_cast<std::size_t>(ranks[i]));
        std::iota(idx.begin(), idx.end(), at);
        ev.push_back(coord(n, idx));
        labels.push_back("m" + std::to_string(i));
        at += ranks[i];
      }
      const Partition macro = Partition::make(ev, labels);
      std::vector<std::size_t> g;
      set_partitions(blocks, g, 0, [&](const std::vector<std::size_t>& group, std::size_t rcount) {
        std::vector<Event> rev(rcount, Event::zero(n));
        std::vector<Index> rrank(rcount, 0);
        std::map<std::string, std::string> reward_of;
        for (std::size_t i = 0; i < blocks; ++i) {
          rev[group[i]] = join(rev[group[i]], ev[i]);
          rrank[group[i]] += ranks[i];
          reward_of[labels[i]] = "r" + std::to_string(group[i]);
        }
        std::vector<std::string> rl;
        for (std::size_t r = 0; r < rcount; ++r) rl.push_back("r" + std::to_string(r));
        const DecisionProblem dp = DecisionProblem::make(macro, Partition::make(rev, rl), reward_of);
        for (int draw = 0; draw < 2; ++draw) {
          std::vector<std::size_t> sources, targets;
          for (std::size_t i = 0; i < blocks; ++i) {
            if (uniform(rng) < 0.75 || (sources.empty() && i + 1 == blocks)) {
              sources.push_back(i);
              targets.push_back(uniform_index(rng, 0, rcount - 1));
            }
          }
          std::vector<std::size_t> offset(rcount, 0);
          std::size_t right = 0;
          for (std::size_t r = 0; r < rcount; ++r) {
            offset[r] = right;
            right += static_cast<std::size_t>(rrank[r]);
          }
          std::vector<std::vector<std::size_t>> left;
          for (std::size_t i = 0; i < sources.size(); ++i) {
            for (Index k = 0; k < ranks[sources[i]]; ++k) {
              std::vector<std::size_t> opts;
              for (Index c = 0; c < rrank[targets[i]]; ++c) opts.push_back(offset[targets[i]] + static_cast<std::size_t>(c));
              left.push_back(std::move(opts));
            }
          }
          const bool oracle = max_matching(left, right) == left.size();
          const bool got = reward_act_search(dp, sources, targets).feasible();
          ++instances;
          feasible += got;
          if (got != oracle) {
            std::ostringstream os;
            os << "mismatch: ranks";
            for (Index r : ranks) os << ' ' << r;
            os << " oracle " << oracle;
            t.fail(os.str());
          }
        }
      });
    });
  }
  return t.done("ledger (8, 4); " + std::to_string(instances) + " instances agree with matching oracle (" +
                std::to_string(feasible) + " feasible)");
}

Outcome branching_availability_criterion() {
  Tally t;
  Rng rng(108);
  double worst = 0.0;
  std::size_t pairs = 0;
  for (int trial = 0; trial < 100; ++trial) {
    // Two to three sources; targets are disjoint across sources.
    const std::size_t nsrc = uniform_index(rng, 1, 3);
    std::vector<std::size_t> tcount(nsrc);
    std::size_t macros = nsrc;
    for (auto& c : tcount) macros += (c = uniform_index(rng, 1, 3));
    std::vector<Index> ranks(macros);
    Index n = 0;
    for (auto& r : ranks) r = static_cast<Index>(uniform_index(rng, 1, 2));
    // The first target of each source is big enough to take all of it.
    for (std::size_t i = 0, first = nsrc; i < nsrc; first += tcount[i++]) ranks[first] = std::max(ranks[first], ranks[i]);
    for (Index r : ranks) n += r;
    const Matrix u = random_unitary(n, rng);
    std::vector<Event> ev;
    std::vector<std::string> labels;
    std::map<std::string, std::string> reward_of;
    Index at = 0;
    for (std::size_t i = 0; i < macros; ++i) {
      ev.push_back(Event::from_frame(u.middleCols(at, ranks[i])));
      labels.push_back("m" + std::to_string(i));
      reward_of[labels.back()] = "all";
      at += ranks[i];
    }
    const DecisionProblem dp =
        DecisionProblem::make(Partition::make(ev, labels), Partition::make({Event::full(n)}, {"all"}), reward_of);
    std::vector<BranchSource> plan;
    std::size_t next = nsrc;
    for (std::size_t i = 0; i < nsrc; ++i) {
      BranchSource bs;
      bs.macro = i;
      bs.state = random_state_in(ev[i], rng) * uniform(rng, 0.5, 1.0);
      std::vector<double> w(tcount[i]);
      double sum = 0.0;
      for (double& x : w) sum += (x = uniform(rng, 0.05, 1.0));
      for (std::size_t j = 0; j < tcount[i]; ++j) bs.targets.emplace_back(next++, w[j] / sum);
      plan.push_back(std::move(bs));
    }
    // Each target has rank >= 1 and takes one direction per source.
    const Act a = branching_act(dp, plan);
    for (const BranchSource& bs : plan) {
      const StateVector out = a.apply(bs.state);
      for (const auto& [m, p] : bs.targets) {
        const double got = (ev[m].frame().adjoint() * out).squaredNorm() / bs.state.squaredNorm();
        worst = std::max(worst, std::abs(got - p));
      }
    }
    // Irreversibility across sources: the smallest events reached from
    // distinct sources meet only in {0}, computed both on the algebra and by
    // subspace intersection.
    for (std::size_t i = 0; i < nsrc; ++i) {
      for (std::size_t j = i + 1; j < nsrc; ++j) {
        const Act ri = a.restrict_to(ev[i]);
        const Act rj = a.restrict_to(ev[j]);
        const BlockSet oi = smallest_member(ri, dp.algebra());
        const BlockSet oj = smallest_member(rj, dp.algebra());
        ++pairs;
        t.expect(set_meet(oi, oj).empty(), "O_U of two sources share atoms");
        t.expect(meet(dp.algebra().event_of(oi), dp.algebra().event_of(oj)).rank() == 0,
                 "O_U of two sources intersect");
      }
    }
  }
  t.expect(worst <= kBranchWeight, "weights off by " + fmt(worst));
  return t.done("100 random branch plans, worst weight error " + fmt(worst) + ", " + std::to_string(pairs) +
                " source pairs irreversible");
}

Outcome tail_criterion() {
  Tally t;
  const SpreadingTail one = build_spreading_tail(16, 1);
  double lo = 1.0;
  for (double w : one.cell_weights) lo = std::min(lo, w);
  t.expect(one.cell_weights.size() == 16 && lo > kTailFloor, "a cell weight is below the floor");
  t.expect(one.smallest == one.dp.algebra().everything(), "smallest event is not the whole space");
  const SpreadingTail none = build_spreading_tail(16, 0);
  t.expect(none.smallest.size() == 1, "control does not stay in one cell");
  return t.done("1 step: min cell weight " + fmt(lo) + ", O_U = H; 0 steps: one cell");
}

Outcome abc_criterion() {
  Tally t;
  const AbcBets ab = build_abc_bets();
  auto value = [&](const Strategy& s, const std::string& act) {
    return evaluate(s, ab.dp, ab.ready, *ab.dp.find_act(ab.ready_member, act));
  };
  const double a = value(ab.utilities, "A");
  const double b = value(ab.utilities, "B");
  const double c = value(ab.utilities, "C");
  const double one = value(ab.utilities, "1");
  t.expect(std::abs(a - 450.0) <= kAbcExact, "A = " + fmt(a));
  t.expect(std::abs(b - 500.0) <= kAbcExact, "B = " + fmt(b));
  t.expect(std::abs(c - 725.0) <= kAbcExact, "C = " + fmt(c));
  t.expect(c > b && b > a && a > one, "order is not C > B > A > 1");
  t.expect(check_diachronic_consistency(ab.dp, ab.utilities, ab.diachronic).pass, "diachronic consistency fails");
  Strategy counting = ab.utilities;
  counting.kind = StrategyKind::counting_eu;
  const double cc = value(counting, "C");
  t.expect(std::abs(cc - 1900.0 / 3.0) <= kAbcExact, "counting C = " + fmt(cc));
  return t.done("A=450 B=500 C=725, C>B>A>1, diachronic ok, counting C=1900/3");
}

Outcome born_suite_criterion() {
  Tally t;
  const auto suite = generate_decision_suite(kDefaultSeed, 12);
  std::size_t above = 0;
  for (std::size_t i = 0; i < suite.size(); ++i) {
    for (const AxiomReport& r : run_axiom_suite(suite[i].dp, suite[i].strategy)) {
      if (r.axiom == "MacrostateIndifference") continue;
      if (r.axiom == "SolutionContinuity" && r.numerics.count("pairs_above_bound")) {
        above += static_cast<std::size_t>(r.numerics.at("pairs_above_bound"));
      }
      t.expect(r.pass, "problem " + std::to_string(i) + " " + r.axiom +
                           (r.witnesses.empty() ? "" : ": " + r.witnesses.front()));
    }
  }
  return t.done(std::to_string(suite.size()) + " problems; continuity held on " + std::to_string(above) +
                " pairs above the gap bound");
}

Outcome pointer_criterion() {
  Tally t;
  const PointerDecomposition d = build_pointer_decompositions(32, 1.5);
  StateVector sa = StateVector::Zero(32), sb = StateVector::Zero(32);
  for (const auto& p : d.parts_a) sa += p;
  for (const auto& p : d.parts_b) sb += p;
  const double ra = (sa - d.psi).norm();
  const double rb = (sb - d.psi).norm();
  t.expect(ra <= kReconstruct && rb <= kReconstruct, "reconstruction off");
  // Oracle: a row or column with two entries >= g rules out every
  // permutation pattern within g.
  double second = 0.0;
  for (Index i = 0; i < 32; ++i) {
    std::vector<double> row, col;
    for (Index j = 0; j < 32; ++j) {
      row.push_back(std::abs(d.parts_a[static_cast<std::size_t>(i)].dot(d.parts_b[static_cast<std::size_t>(j)])));
      col.push_back(std::abs(d.parts_a[static_cast<std::size_t>(j)].dot(d.parts_b[static_cast<std::size_t>(i)])));
    }
    std::sort(row.rbegin(), row.rend());
    std::sort(col.rbegin(), col.rend());
    second = std::max({second, row[1], col[1]});
  }
  t.expect(second >= kPermutationGap, "oracle deviation " + fmt(second));
  t.expect(d.deviation >= kPermutationGap, "reported deviation " + fmt(d.deviation));
  return t.done("residuals " + fmt(ra) + ", " + fmt(rb) + "; deviation " + fmt(d.deviation));
}

std::string run_binary(const std::string& cmd) {
  std::string out;
  FILE* p = ::popen(cmd.c_str(), "r");
  if (!p) return out;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), got);
  ::pclose(p);
  return out;
}

Outcome determinism_criterion() {
  Tally t;
  const std::filesystem::path dir = std::filesystem::temp_directory_path() / "branchlab_acceptance";
  std::filesystem::create_directories(dir);
  const std::string abc = (dir / "abc.json").string();
  const std::string meas = (dir / "meas.json").string();
  std::ostringstream sink, err;
  cli::run({"demo", "abc-bets", "--export", abc}, sink, err);
  cli::run({"demo", "measurement", "--coeffs", "1,2:1,2", "--times", "2", "--export", meas}, sink, err);

  const std::vector<std::vector<std::string>> invocations{
      {"demo", "measurement", "--coeffs", "3,4"},
      {"demo", "erasure"},
      {"demo", "reward-availability"},
      {"demo", "spreading-tail", "--grid", "16"},
      {"demo", "pointer-decomp", "--grid", "32", "--sigma", "1.5"},
      {"check-consistency", meas},
      {"check-richness", abc},
      {"check-axioms", abc, "--strategy", "counting_eu", "--seed", "11"},
      {"check-axioms", abc, "--strategy", "born_eu"},
  };
  std::size_t compared = 0;
  for (const auto& args : invocations) {
    std::ostringstream a, ea, b, eb;
    cli::run(args, a, ea);
    cli::run(args, b, eb);
    t.expect(!a.str().empty() && a.str() == b.str(), "in-process report differs for " + args[0] + " " + args[1]);
    std::string cmd = BRANCHLAB_CLI_PATH;
    for (const auto& s : args) cmd += " '" + s + "'";
    cmd += " 2>/dev/null";
    const std::string x = run_binary(cmd);
    const std::string y = run_binary(cmd);
    t.expect(!x.empty() && x == y, "binary report differs for " + args[0] + " " + args[1]);
    t.expect(x == a.str(), "binary and in-process reports differ for " + args[0] + " " + args[1]);
    compared += 2;
  }
  return t.done(std::to_string(compared) + " repeated invocations byte-identical");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"born weights", born_weights_criterion},
      {"branching implies consistency", branching_implies_consistency},
      {"bc_refine", bc_refine_criterion},
      {"algebra membership failure", algebra_failure_criterion},
      {"additivity", additivity_criterion},
      {"erasure contradiction", erasure_criterion},
      {"reward availability contradiction", reward_availability_criterion},
      {"branching availability", branching_availability_criterion},
      {"tail spreading", tail_criterion},
      {"A/B/C bets", abc_criterion},
      {"born_eu axiom suite", born_suite_criterion},
      {"pointer non-uniqueness", pointer_criterion},
      {"determinism", determinism_criterion},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << ' ' << (i + 1 < 10 ? " " : "") << i + 1 << ' '
              << criteria[i].first << ": " << o.detail << " (" << fmt(secs) << " s)\n";
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << '/' << criteria.size() << " criteria pass\n";
  return failed == 0 ? 0 : 1;
}
