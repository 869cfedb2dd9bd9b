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

#include "branchlab/scenarios.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace branchlab;
using namespace branchlab::testing;

namespace {

const AxiomReport& find(const std::vector<AxiomReport>& rs, const std::string& axiom) {
  for (const auto& r : rs) {
    if (r.axiom == axiom) return r;
  }
  throw std::runtime_error("no report for " + axiom);
}

double value_of(const AbcBets& ab, const Strategy& s, const std::string& act) {
  return evaluate(s, ab.dp, ab.ready, *ab.dp.find_act(ab.ready_member, act));
}

}  // namespace

TEST_SUITE("axioms") {

TEST_CASE("strategy names round-trip") {
  for (auto k : {StrategyKind::born_eu, StrategyKind::counting_eu, StrategyKind::coarse_count_eu,
                 StrategyKind::minimax}) {
    CHECK(strategy_from_string(to_string(k)) == k);
  }
  CHECK_THROWS_AS(strategy_from_string("bayes"), Error);
}

TEST_CASE("ABC values by branch enumeration") {
  const AbcBets ab = build_abc_bets();
  Strategy born = ab.utilities;
  // Oracle: weights times cash, summed by hand.
  CHECK(std::abs(value_of(ab, born, "A") - (0.5 * 1000 + 0.5 * -100)) <= 1e-9);
  CHECK(std::abs(value_of(ab, born, "B") - (0.5 * 1000 + 0.5 * 0)) <= 1e-9);
  CHECK(std::abs(value_of(ab, born, "C") - (0.5 * 1000 + 0.25 * 1000 + 0.25 * -100)) <= 1e-9);
  CHECK(value_of(ab, born, "1") == 0.0);

  Strategy counting = born;
  counting.kind = StrategyKind::counting_eu;
  CHECK(std::abs(value_of(ab, counting, "C") - (1000.0 + 1000.0 - 100.0) / 3.0) <= 1e-9);
  CHECK(std::abs(value_of(ab, counting, "A") - 450.0) <= 1e-9);

  Strategy mm = born;
  mm.kind = StrategyKind::minimax;
  CHECK(value_of(ab, mm, "C") == -100.0);
  CHECK(value_of(ab, mm, "B") == 0.0);
}

TEST_CASE("coarse counting merges macrostates into grain cells") {
  const AbcBets ab = build_abc_bets();
  Strategy coarse = ab.utilities;
  coarse.kind = StrategyKind::coarse_count_eu;
  // C's two down outcomes in one cell would straddle rewards: refused.
  coarse.grain = {{"B:down>A:up", "down"}, {"B:down>A:down", "down"}};
  CHECK_THROWS_AS(value_of(ab, coarse, "C"), Error);
  coarse.grain = {{"B:up", "win"}, {"B:down>A:up", "win"}};
  // Cells: {B:up, B:down>A:up} -> 1000, {B:down>A:down} -> -100.
  CHECK(value_of(ab, coarse, "C") == doctest::Approx(450.0));
}

TEST_CASE("missing utilities are an error") {
  const AbcBets ab = build_abc_bets();
  Strategy s;
  s.utilities = {{"cash+1000", 1.0}};
  CHECK_THROWS_AS(value_of(ab, s, "A"), Error);
}

TEST_CASE("ordering detects an explicit cycle") {
  PreferenceOrder po;
  po.acts = {"x", "y", "z"};
  po.weak = {{"x", "x"}, {"y", "y"}, {"z", "z"}, {"x", "y"}, {"y", "z"}, {"z", "x"}};
  const AxiomReport r = check_ordering(po);
  CHECK_FALSE(r.pass);
  bool cycle = false;
  for (const auto& w : r.witnesses) cycle = cycle || w.find("cycle") != std::string::npos;
  CHECK(cycle);

  CHECK(check_ordering(PreferenceOrder::from_values({{"a", 1.0}, {"b", 2.0}, {"c", 2.0}})).pass);
  PreferenceOrder id;
  id.acts = {"1"};
  id.weak = {{"1", "1"}};
  CHECK(check_ordering(id).pass);
}

TEST_CASE("born_eu passes every axiom on ABC; diachronic scenario holds") {
  const AbcBets ab = build_abc_bets();
  const auto reports = run_axiom_suite(ab.dp, ab.utilities);
  for (const auto& r : reports) {
    INFO(r.axiom, " ", (r.witnesses.empty() ? "" : r.witnesses.front()));
    CHECK(r.pass);
  }
  const AxiomReport d = check_diachronic_consistency(ab.dp, ab.utilities, ab.diachronic);
  CHECK(d.pass);
  CHECK(d.checked > 0);
  // C > B follows from A@down > 1 in the down branch.
  const double c = value_of(ab, ab.utilities, "C");
  const double b = value_of(ab, ab.utilities, "B");
  CHECK(c > b);
}

TEST_CASE("counting violates diachronic consistency and branching indifference on ABC") {
  const AbcBets ab = build_abc_bets();
  Strategy counting = ab.utilities;
  counting.kind = StrategyKind::counting_eu;
  const auto reports = run_axiom_suite(ab.dp, counting);
  CHECK_FALSE(find(reports, "DiachronicConsistency").pass);
  CHECK_FALSE(find(reports, "BranchingIndifference").pass);
  CHECK(find(reports, "Ordering").pass);
  CHECK(find(reports, "StateSupervenience").pass);
}

TEST_CASE("state supervenience catches a process-sensitive strategy") {
  const AbcBets ab = build_abc_bets();
  Strategy fussy = ab.utilities;
  fussy.act_costs = {{"A", 500.0}};  // A drops below 1 only when labelled A
  const AxiomReport r = check_state_supervenience(ab.dp, fussy);
  CHECK_FALSE(r.pass);
  CHECK_FALSE(r.witnesses.empty());
  CHECK(check_state_supervenience(ab.dp, ab.utilities).pass);
}

TEST_CASE("solution continuity: born values move by at most 2 delta max|u|") {
  const AbcBets ab = build_abc_bets();
  const Act a = *ab.dp.find_act(ab.ready_member, "A");
  const Act b = *ab.dp.find_act(ab.ready_member, "B");
  ContinuityOptions opts;
  const AxiomReport r = check_solution_continuity(ab.dp, ab.utilities, ab.ready, a, b, opts);
  CHECK(r.pass);
  CHECK(r.numerics.at("gap") == doctest::Approx(50.0));
  CHECK(r.numerics.at("bound") == doctest::Approx(4 * opts.delta * 1000.0));
  CHECK(r.numerics.at("min_gap") > 0.0);
}

TEST_CASE("perturbed acts sit exactly delta away") {
  Rng rng(5);
  const AbcBets ab = build_abc_bets();
  const Act a = *ab.dp.find_act(ab.ready_member, "A");
  for (int t = 0; t < 10; ++t) {
    const Matrix h = random_hermitian(8, rng);
    const Act p = perturb_act(a, h, 1e-4);
    CHECK(op_norm_distance(p.as_operator(), a.as_operator()) == doctest::Approx(1e-4).epsilon(1e-6));
    CHECK(is_isometry(p.matrix()));
  }
}

TEST_CASE("act nondegeneracy needs a strict preference somewhere") {
  const AbcBets ab = build_abc_bets();
  CHECK(check_act_nondegeneracy(ab.dp, ab.utilities, {ab.ready}).pass);
  Strategy flat = ab.utilities;
  for (auto& [k, v] : flat.utilities) v = 7.0;
  CHECK_FALSE(check_act_nondegeneracy(ab.dp, flat).pass);
}

TEST_CASE("macrostate indifference only applies when both sides land in one macrostate") {
  const AbcBets ab = build_abc_bets();
  const Act one = *ab.dp.find_act(ab.ready_member, "1");
  const Act a = *ab.dp.find_act(ab.ready_member, "A");
  const AxiomReport skipped = check_macrostate_indifference(ab.dp, ab.utilities, {{ab.ready, a, one, ab.ready, a, one}});
  CHECK(skipped.checked == 0);
  CHECK(skipped.numerics.at("skipped") == 1.0);
  const AxiomReport same = check_macrostate_indifference(ab.dp, ab.utilities, {{ab.ready, one, one, ab.ready, one, one}});
  CHECK(same.checked == 1);
  CHECK(same.pass);
}

TEST_CASE("property: born_eu satisfies the axioms on generated problems") {
  const auto suite = generate_decision_suite(kDefaultSeed, 6);
  for (const auto& g : suite) {
    for (const auto& r : run_axiom_suite(g.dp, g.strategy)) {
      INFO(r.axiom, " ", (r.witnesses.empty() ? "" : r.witnesses.front()));
      CHECK(r.pass);
    }
  }
}

TEST_CASE("suite reports are deterministic for a fixed seed") {
  const AbcBets ab = build_abc_bets();
  Strategy counting = ab.utilities;
  counting.kind = StrategyKind::counting_eu;
  const auto a = run_axiom_suite(ab.dp, counting);
  const auto b = run_axiom_suite(ab.dp, counting);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].witnesses == b[i].witnesses);
    CHECK(a[i].numerics == b[i].numerics);
  }
}

}  // TEST_SUITE
