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

#include "branchlab/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "branchlab/measures.hpp"
#include "branchlab/random.hpp"
#include "branchlab/scenario_io.hpp"
#include "branchlab/scenarios.hpp"

namespace branchlab::cli {

namespace {

using Table = std::vector<std::vector<std::string>>;  // row 0 is the header

struct Outcome {
  Json report;
  bool pass = true;
  Table table;
};

std::string num(double x) { return Json(x).dump(); }

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string render_csv(const Table& t) {
  std::string s;
  for (const auto& row : t) {
    for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + csv_cell(row[i]);
    s += "\n";
  }
  return s;
}

std::uint64_t parse_seed(const std::string& text, const std::string& what) {
  std::uint64_t v = 0;
  const auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || p != text.data() + text.size() || text.empty()) {
    throw Error(ErrorCode::invalid_argument, what + " is not an unsigned integer: '" + text + "'");
  }
  return v;
}

std::uint64_t resolve_seed(const std::string& flag) {
  if (!flag.empty()) return parse_seed(flag, "--seed");
  if (const char* env = std::getenv("BRANCHLAB_SEED"); env && *env) return parse_seed(env, "BRANCHLAB_SEED");
  return kDefaultSeed;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::invalid_argument, what + ": not a number: '" + s + "'");
}

// "3,4" or "0.6:0.1,0.8" (re:im).
std::vector<Complex> parse_coeffs(const std::string& s) {
  std::vector<Complex> out;
  for (const auto& item : split(s, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      out.emplace_back(parse_double(item, "--coeffs"), 0.0);
    } else {
      out.emplace_back(parse_double(item.substr(0, colon), "--coeffs"),
                       parse_double(item.substr(colon + 1), "--coeffs"));
    }
  }
  if (out.empty()) throw Error(ErrorCode::invalid_argument, "--coeffs: empty list");
  return out;
}

std::map<std::string, double> parse_utilities(const std::string& s) {
  std::map<std::string, double> out;
  for (const auto& item : split(s, ',')) {
    const auto eq = item.rfind('=');
    if (eq == std::string::npos || eq == 0) {
      throw Error(ErrorCode::invalid_argument, "--utilities: expected reward=value, got '" + item + "'");
    }
    out[item.substr(0, eq)] = parse_double(item.substr(eq + 1), "--utilities");
  }
  return out;
}

Json header(const std::string& command, std::uint64_t seed, const Tolerances& tol) {
  return Json{{"command", command}, {"seed", seed}, {"tolerances", to_json(tol)}, {"schema_version", 1}};
}

Json axiom_json(const AxiomReport& r) {
  return Json{{"axiom", r.axiom},         {"strategy", r.strategy}, {"pass", r.pass},
              {"witnesses", r.witnesses}, {"numerics", r.numerics}, {"checked", r.checked}};
}

void append_axioms(Outcome& o, const std::vector<AxiomReport>& reports) {
  Json arr = Json::array();
  o.table = {{"axiom", "strategy", "pass", "checked", "witnesses"}};
  for (const auto& r : reports) {
    arr.push_back(axiom_json(r));
    o.pass = o.pass && r.pass;
    o.table.push_back({r.axiom, r.strategy, r.pass ? "true" : "false", std::to_string(r.checked),
                       std::to_string(r.witnesses.size())});
  }
  o.report["axioms"] = std::move(arr);
}

StateVector canonical_state(const Event& e) {
  StateVector v = e.frame().rowwise().sum();
  return v / v.norm();
}

// Values of every act set's acts, at the file state where it lies in the
// domain, else at the canonical state of the domain.
Json value_table(const DecisionProblem& dp, const Strategy& s, const std::optional<StateVector>& state,
                 const Tolerances& tol) {
  Json out = Json::array();
  for (const auto& [member, acts] : dp.acts()) {
    const Event e = dp.algebra().event_of(member);
    const bool use_file = state && e.contains(*state, tol);
    const StateVector psi = use_file ? StateVector(*state / state->norm()) : canonical_state(e);
    std::vector<std::pair<std::string, double>> vals;
    Json values = Json::object();
    for (const Act& a : acts) {
      const double v = evaluate(s, dp, psi, a, tol);
      values[a.label()] = v;
      vals.emplace_back(a.label(), v);
    }
    std::stable_sort(vals.begin(), vals.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    Json order = Json::array();
    for (const auto& [l, v] : vals) order.push_back(l);
    out.push_back(Json{{"domain", dp.algebra().describe(member)},
                       {"state", use_file ? "file" : "canonical"},
                       {"values", std::move(values)},
                       {"order", std::move(order)}});
  }
  return out;
}

// ---------------------------------------------------------------------------

Outcome cmd_check_consistency(const std::string& path, std::size_t cap, const std::string& floor_text,
                              std::uint64_t seed) {
  const Scenario sc = load_scenario(path);
  if (!sc.history_space) throw Error(ErrorCode::schema, path + ": no history_space in file");
  const HistorySpace& hs = *sc.history_space;
  EnumerationOptions eo;
  eo.cap = cap;
  if (!floor_text.empty()) eo.weight_floor = parse_double(floor_text, "--weight-floor");

  Outcome o;
  o.report["header"] = header("check-consistency", seed, sc.tol);
  o.table = {{"history", "weight"}};
  Json hist = Json::array();
  for (const Branch& b : enumerate_branches(hs, eo)) {
    hist.push_back(Json{{"history", hs.describe(b.history)}, {"weight", b.weight}});
    o.table.push_back({hs.describe(b.history), num(b.weight)});
  }
  o.report["histories"] = std::move(hist);

  const ConsistencyReport cr = consistency_report(hs, sc.tol, eo);
  Json off = Json::array();
  for (const auto& p : cr.offenders) {
    off.push_back(Json{{"a", hs.describe(p.a)}, {"b", hs.describe(p.b)}, {"overlap", p.overlap}});
  }
  o.report["consistency"] = Json{{"consistent", cr.consistent},
                                 {"max_overlap", cr.max_overlap},
                                 {"offender_count", cr.offender_count},
                                 {"offenders", std::move(off)},
                                 {"history_count", cr.history_count},
                                 {"weight_floor_applied", cr.weight_floor_applied}};

  const BranchingReport br = branching_report(hs, sc.tol, eo);
  Json bj{{"branching", br.branching}, {"witness_min_weight", br.witness_min_weight}};
  if (br.witness) bj["witness"] = Json::array({hs.describe(br.witness->first), hs.describe(br.witness->second)});
  o.report["branching"] = std::move(bj);

  if (cr.consistent && !br.branching) {
    const HistorySpace ref = bc_refine(hs, sc.tol, eo);
    o.report["refinement"] = Json{{"branching", is_branching(ref, sc.tol, eo)},
                                  {"consistent", consistency_report(ref, sc.tol, eo).consistent},
                                  {"final_cells", ref.sample_spaces().back().size()},
                                  {"refines_original", is_refinement(ref.sample_spaces().back().to_partition(sc.tol),
                                                                     hs.sample_spaces().back().to_partition(sc.tol),
                                                                     sc.tol)}};
  }
  o.pass = cr.consistent && br.branching;
  return o;
}

Outcome cmd_check_richness(const std::string& path, std::uint64_t seed) {
  const Scenario sc = load_scenario(path);
  if (!sc.decision_problem) throw Error(ErrorCode::schema, path + ": no decision_problem in file");
  const RichnessReport rr = check_richness(*sc.decision_problem, sc.tol);
  Outcome o;
  o.report["header"] = header("check-richness", seed, sc.tol);
  o.table = {{"condition", "pass", "witnesses"}};
  Json conds = Json::array();
  for (const auto& c : rr.conditions) {
    conds.push_back(Json{{"name", c.name}, {"pass", c.pass}, {"witnesses", c.witnesses}});
    o.table.push_back({c.name, c.pass ? "true" : "false", std::to_string(c.witnesses.size())});
  }
  o.report["conditions"] = std::move(conds);
  o.report["empty_act_sets"] = rr.empty_act_sets;
  o.report["full_space_empty"] = rr.full_space_empty;
  o.report["vacuous"] = rr.vacuous;
  o.pass = rr.all_pass();
  return o;
}

struct AxiomFlags {
  std::string strategy;
  std::string utilities;
  std::string theta;
  std::size_t samples = 4;
  std::size_t perturbations = 16;
  double delta = 1e-4;
};

Outcome cmd_check_axioms(const std::string& path, const AxiomFlags& f, std::uint64_t seed) {
  const Scenario sc = load_scenario(path);
  if (!sc.decision_problem) throw Error(ErrorCode::schema, path + ": no decision_problem in file");
  Strategy s = sc.strategy.value_or(Strategy{});
  if (!f.strategy.empty()) s.kind = strategy_from_string(f.strategy);
  if (!f.utilities.empty()) s.utilities = parse_utilities(f.utilities);
  if (!f.theta.empty()) s.threshold = parse_double(f.theta, "--theta");
  if (s.utilities.empty()) {
    throw Error(ErrorCode::invalid_argument, "no utilities: pass --utilities or put a strategy block in the file");
  }
  SuiteOptions so;
  so.sampling.seed = seed;
  so.sampling.samples = f.samples;
  so.continuity.seed = seed;
  so.continuity.perturbations = f.perturbations;
  so.continuity.delta = f.delta;

  Outcome o;
  o.report["header"] = header("check-axioms", seed, sc.tol);
  o.report["strategy"] = to_json(s);
  o.report["values"] = value_table(*sc.decision_problem, s, sc.state, sc.tol);
  append_axioms(o, run_axiom_suite(*sc.decision_problem, s, so, sc.tol));
  return o;
}

struct DemoFlags {
  std::string coeffs = "1,1";
  std::size_t times = 1;
  std::size_t grid = 16;
  std::size_t steps = 1;
  double sigma = 1.5;
  double shift = 0.5;
  double separation = 0.0;
  bool distinct = false;
  bool whole_space = false;
  std::string theta;
  std::string export_path;
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::invalid_argument, "cannot write '" + path + "'");
  f << text;
}

Outcome demo_measurement(const DemoFlags& f, std::uint64_t seed, Json& exported) {
  const Tolerances tol;
  const HistorySpace hs = build_measurement_model(parse_coeffs(f.coeffs), f.times);
  Outcome o;
  o.report["header"] = header("demo measurement", seed, tol);
  o.table = {{"history", "weight"}};
  Json w = Json::object();
  for (const Branch& b : enumerate_branches(hs)) {
    w[hs.describe(b.history)] = b.weight;
    o.table.push_back({hs.describe(b.history), num(b.weight)});
  }
  const ConsistencyReport cr = consistency_report(hs, tol);
  const bool branching = is_branching(hs, tol);
  o.report["weights"] = std::move(w);
  o.report["consistent"] = cr.consistent;
  o.report["max_overlap"] = cr.max_overlap;
  o.report["branching"] = branching;
  o.pass = cr.consistent && branching;
  exported = scenario_file("history_space", to_json(hs), tol);
  return o;
}

Outcome demo_abc(const DemoFlags& f, std::uint64_t seed, Json& exported) {
  const Tolerances tol;
  const AbcBets ab = build_abc_bets();
  const Strategy born = ab.utilities;
  Strategy counting = born;
  counting.kind = StrategyKind::counting_eu;
  if (!f.theta.empty()) counting.threshold = parse_double(f.theta, "--theta");
  Strategy minimax = counting;
  minimax.kind = StrategyKind::minimax;

  Outcome o;
  o.report["header"] = header("demo abc-bets", seed, tol);
  o.table = {{"act", "born_eu", "counting_eu", "minimax"}};
  Json values = Json::object();
  std::vector<std::pair<std::string, double>> born_vals;
  for (const Act& a : ab.dp.acts_at(ab.ready_member)) {
    const double vb = evaluate(born, ab.dp, ab.ready, a, tol);
    const double vc = evaluate(counting, ab.dp, ab.ready, a, tol);
    const double vm = evaluate(minimax, ab.dp, ab.ready, a, tol);
    values[a.label()] = Json{{"born_eu", vb}, {"counting_eu", vc}, {"minimax", vm}};
    born_vals.emplace_back(a.label(), vb);
    o.table.push_back({a.label(), num(vb), num(vc), num(vm)});
  }
  std::stable_sort(born_vals.begin(), born_vals.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  Json order = Json::array();
  for (const auto& [l, v] : born_vals) order.push_back(l);
  o.report["values"] = std::move(values);
  o.report["born_order"] = std::move(order);
  o.report["counting_threshold"] = counting.threshold;

  const AxiomReport dia_born = check_diachronic_consistency(ab.dp, born, ab.diachronic, tol);
  const AxiomReport dia_count = check_diachronic_consistency(ab.dp, counting, ab.diachronic, tol);
  o.report["diachronic"] = Json::array({axiom_json(dia_born), axiom_json(dia_count)});

  SuiteOptions so;
  so.sampling.seed = seed;
  so.continuity.seed = seed;
  const Table values_table = o.table;
  append_axioms(o, run_axiom_suite(ab.dp, born, so, tol));
  o.table = values_table;
  o.pass = o.pass && dia_born.pass;
  exported = scenario_file("decision_problem", to_json(ab.dp, &born, &ab.ready), tol);
  return o;
}

Outcome demo_erasure(const DemoFlags& f, std::uint64_t seed, Json& exported) {
  const Tolerances tol;
  const ErasureDemo d = build_erasure_contradiction(f.separation, f.distinct);
  Outcome o;
  o.report["header"] = header("demo erasure", seed, tol);
  o.report["inner_before"] = d.inner_before;
  o.report["inner_after"] = d.inner_after;
  o.report["defect"] = d.lift.defect;
  o.report["lift_feasible"] = d.lift.feasible();
  o.report["separation"] = f.separation;
  o.report["distinct_targets"] = f.distinct;
  o.table = {{"quantity", "value"},
             {"inner_before", num(d.inner_before)},
             {"inner_after", num(d.inner_after)},
             {"defect", num(d.lift.defect)}};
  o.pass = d.lift.feasible();
  exported = scenario_file("decision_problem", to_json(d.dp), tol);
  return o;
}

Outcome demo_reward(const DemoFlags& f, std::uint64_t seed, Json& exported) {
  const Tolerances tol;
  const RewardAvailabilityDemo d = build_reward_availability_contradiction(f.whole_space);
  Outcome o;
  o.report["header"] = header("demo reward-availability", seed, tol);
  o.table = {{"reward", "required", "available"}};
  Json ledger = Json::array();
  for (const auto& e : d.result.ledger) {
    ledger.push_back(Json{{"reward", e.reward}, {"required", e.required}, {"available", e.available}});
    o.table.push_back({e.reward, std::to_string(e.required), std::to_string(e.available)});
  }
  o.report["ledger"] = std::move(ledger);
  o.report["feasible"] = d.result.feasible();
  o.report["result"] = d.result.feasible() ? "Feasible" : "InfeasibleByDimension";
  o.pass = d.result.feasible();
  exported = scenario_file("decision_problem", to_json(d.dp), tol);
  return o;
}

Outcome demo_spreading(const DemoFlags& f, std::uint64_t seed, Json& exported) {
  const Tolerances tol;
  const SpreadingTail d = build_spreading_tail(f.grid, f.steps);
  Outcome o;
  o.report["header"] = header("demo spreading-tail", seed, tol);
  o.table = {{"cell", "weight"}};
  Json w = Json::object();
  double min_w = 1.0;
  for (std::size_t c = 0; c < d.cell_weights.size(); ++c) {
    const std::string& label = d.dp.macrostates().label(c);
    w[label] = d.cell_weights[c];
    min_w = std::min(min_w, d.cell_weights[c]);
    o.table.push_back({label, num(d.cell_weights[c])});
  }
  const bool full = d.smallest.size() == d.dp.macrostates().size();
  o.report["grid"] = f.grid;
  o.report["steps"] = f.steps;
  o.report["dt"] = d.dt;
  o.report["cell_weights"] = std::move(w);
  o.report["min_weight"] = min_w;
  o.report["smallest_event"] = d.dp.algebra().describe(d.smallest);
  o.report["smallest_event_is_full_space"] = full;
  o.report["compact_support_preserved"] = d.smallest.size() == 1;
  o.pass = d.smallest.size() == 1;
  Json payload = to_json(d.dp);
  StateVector start = StateVector::Zero(static_cast<Index>(f.grid));
  start(static_cast<Index>(d.start_cell)) = 1.0;
  payload["state"] = to_json(start);
  exported = scenario_file("decision_problem", payload, tol);
  return o;
}

Outcome demo_pointer(const DemoFlags& f, std::uint64_t seed, Json& exported) {
  const Tolerances tol;
  const PointerDecomposition d = build_pointer_decompositions(f.grid, f.sigma, f.shift);
  Outcome o;
  o.report["header"] = header("demo pointer-decomp", seed, tol);
  o.table = {{"i", "j", "overlap"}};
  Json cross = Json::array();
  for (Index i = 0; i < d.cross.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < d.cross.cols(); ++j) {
      row.push_back(d.cross(i, j).real());
      o.table.push_back({std::to_string(i), std::to_string(j), num(d.cross(i, j).real())});
    }
    cross.push_back(std::move(row));
  }
  const bool unique = d.deviation <= tol.near_orth;
  o.report["grid"] = f.grid;
  o.report["sigma"] = f.sigma;
  o.report["shift"] = f.shift;
  o.report["residual_a"] = d.residual_a;
  o.report["residual_b"] = d.residual_b;
  o.report["condition_a"] = d.condition_a;
  o.report["condition_b"] = d.condition_b;
  o.report["deviation"] = d.deviation;
  o.report["cross_overlap"] = std::move(cross);
  o.report["decomposition_unique"] = unique;
  o.pass = unique;
  exported = scenario_file("bundle",
                           Json{{"state", to_json(d.psi)},
                                {"pointer_frames", Json{{"a", to_json(d.frame_a)}, {"b", to_json(d.frame_b)}}},
                                {"grid", f.grid},
                                {"sigma", f.sigma},
                                {"shift", f.shift}},
                           tol);
  return o;
}

Outcome cmd_demo(const std::string& name, const DemoFlags& f, std::uint64_t seed) {
  Json exported;
  Outcome o;
  if (name == "measurement") o = demo_measurement(f, seed, exported);
  else if (name == "abc-bets") o = demo_abc(f, seed, exported);
  else if (name == "erasure") o = demo_erasure(f, seed, exported);
  else if (name == "reward-availability") o = demo_reward(f, seed, exported);
  else if (name == "spreading-tail") o = demo_spreading(f, seed, exported);
  else if (name == "pointer-decomp") o = demo_pointer(f, seed, exported);
  else throw Error(ErrorCode::invalid_argument, "unknown demo '" + name + "'");
  if (!f.export_path.empty()) write_file(f.export_path, exported.dump(2) + "\n");
  return o;
}

Outcome cmd_measure(const std::string& path, const std::string& chain_text, const std::string& theta_text,
                    std::uint64_t seed) {
  const Scenario sc = load_scenario(path);
  if (!sc.state) throw Error(ErrorCode::schema, path + ": no state in file");
  if (sc.partitions.empty()) throw Error(ErrorCode::schema, path + ": no partitions in file");
  const double theta = theta_text.empty() ? kDefaultCountThreshold : parse_double(theta_text, "--theta");

  std::vector<const NamedPartition*> picked;
  if (chain_text.empty()) {
    for (const auto& np : sc.partitions) picked.push_back(&np);
  } else {
    for (const auto& name : split(chain_text, ',')) {
      const auto it = std::find_if(sc.partitions.begin(), sc.partitions.end(),
                                   [&](const NamedPartition& np) { return np.name == name; });
      if (it == sc.partitions.end()) throw Error(ErrorCode::invalid_argument, "no partition named '" + name + "'");
      picked.push_back(&*it);
    }
  }
  std::vector<Partition> chain;
  for (const auto* np : picked) chain.push_back(np->partition);
  const StabilityReport sr = count_stability(*sc.state, chain, theta, sc.tol);

  Outcome o;
  o.report["header"] = header("measure", seed, sc.tol);
  o.report["theta"] = theta;
  o.table = {{"grain", "count"}};
  Json grains = Json::array();
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const BranchProfile prof = born_weights(*sc.state, chain[i]);
    Json w = Json::object();
    for (std::size_t k = 0; k < prof.labels.size(); ++k) w[prof.labels[k]] = prof.weights[k];
    grains.push_back(Json{{"name", picked[i]->name}, {"count", sr.counts[i]}, {"weights", std::move(w)}});
    o.table.push_back({picked[i]->name, std::to_string(sr.counts[i])});
  }
  o.report["grains"] = std::move(grains);
  o.report["counts"] = sr.counts;
  if (sr.plateau) {
    o.report["plateau"] = Json{{"first", picked[sr.plateau->first]->name}, {"last", picked[sr.plateau->second]->name},
                               {"count", sr.counts[sr.plateau->first]}};
  } else {
    o.report["plateau"] = nullptr;
  }
  o.pass = sr.plateau.has_value();
  return o;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"branchlab: branching, consistency and decision-theoretic checks"};
  app.name("branchlab");
  app.require_subcommand(1);

  std::string out_path, csv_path, seed_text;
  app.add_option("--out", out_path, "write the JSON report here instead of stdout");
  app.add_option("--csv", csv_path, "write the command's table as CSV");
  app.add_option("--seed", seed_text, "seed for all sampling (default: BRANCHLAB_SEED, else 20170829)");

  std::string file;
  auto* cc = app.add_subcommand("check-consistency", "enumerate histories; consistency and branching");
  std::size_t cap = 4096;
  std::string floor_text;
  cc->add_option("file", file, "scenario file")->required();
  cc->add_option("--cap", cap, "maximum number of histories");
  cc->add_option("--weight-floor", floor_text, "drop histories with weight at or below this");

  auto* cr = app.add_subcommand("check-richness", "richness conditions on a decision problem's act sets");
  cr->add_option("file", file, "scenario file")->required();

  AxiomFlags af;
  auto* ca = app.add_subcommand("check-axioms", "run the axiom suite for one strategy");
  ca->add_option("file", file, "scenario file")->required();
  ca->add_option("--strategy", af.strategy, "born_eu | counting_eu | coarse_count_eu | minimax");
  ca->add_option("--utilities", af.utilities, "reward=utility,...");
  ca->add_option("--theta", af.theta, "branch-presence threshold");
  ca->add_option("--samples", af.samples, "random states per act set");
  ca->add_option("--perturbations", af.perturbations, "perturbations per act pair");
  ca->add_option("--delta", af.delta, "perturbation size in operator norm");

  DemoFlags df;
  std::string demo_name;
  auto* de = app.add_subcommand("demo", "built-in demonstrations");
  de->add_option("name", demo_name,
                 "abc-bets | erasure | reward-availability | spreading-tail | pointer-decomp | measurement")
      ->required();
  de->add_option("--coeffs", df.coeffs, "measurement amplitudes, re or re:im, comma separated");
  de->add_option("--times", df.times, "measurement: number of recorded times");
  de->add_option("--grid", df.grid, "grid size (spreading-tail, pointer-decomp)");
  de->add_option("--steps", df.steps, "propagator steps (spreading-tail)");
  de->add_option("--sigma", df.sigma, "pointer width in grid cells");
  de->add_option("--shift", df.shift, "offset of the second pointer family");
  de->add_option("--separation", df.separation, "erasure: distance between the two targets");
  de->add_flag("--distinct", df.distinct, "erasure: orthogonal targets");
  de->add_flag("--whole-space", df.whole_space, "reward-availability: one reward covering everything");
  de->add_option("--theta", df.theta, "abc-bets: counting threshold");
  de->add_option("--export", df.export_path, "write the scenario as a scenario file");

  std::string chain_text, theta_text;
  auto* me = app.add_subcommand("measure", "branch counts along a grain chain");
  me->add_option("file", file, "scenario file with a state and partitions")->required();
  me->add_option("--grain-chain", chain_text, "partition names, coarse to fine, comma separated");
  me->add_option("--theta", theta_text, "count threshold");

  for (auto* sub : {cc, cr, ca, de, me}) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    if (const auto nl = msg.find('\n'); nl != std::string::npos) msg.resize(nl);
    err << "error: " << msg << "\n";
    return kExitInputError;
  }

  try {
    const std::uint64_t seed = resolve_seed(seed_text);
    Outcome o;
    if (cc->parsed()) o = cmd_check_consistency(file, cap, floor_text, seed);
    else if (cr->parsed()) o = cmd_check_richness(file, seed);
    else if (ca->parsed()) o = cmd_check_axioms(file, af, seed);
    else if (de->parsed()) o = cmd_demo(demo_name, df, seed);
    else o = cmd_measure(file, chain_text, theta_text, seed);

    o.report["pass"] = o.pass;
    const std::string text = o.report.dump(2) + "\n";
    if (out_path.empty()) out << text;
    else write_file(out_path, text);
    if (!csv_path.empty()) write_file(csv_path, render_csv(o.table));
    return o.pass ? kExitPass : kExitFindings;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace branchlab::cli
