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

#include "branchlab/scenario_io.hpp"

#include <fstream>

namespace branchlab {

namespace {

[[noreturn]] void schema(const std::string& msg) { throw Error(ErrorCode::schema, msg); }

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) schema(where + ": expected an object");
  const auto it = j.find(key);
  if (it == j.end()) schema(where + ": missing \"" + key + "\"");
  return *it;
}

const Json& array_field(const Json& j, const char* key, const std::string& where) {
  const Json& a = field(j, key, where);
  if (!a.is_array()) schema(where + "." + key + ": expected an array");
  return a;
}

std::string string_of(const Json& j, const std::string& where) {
  if (!j.is_string()) schema(where + ": expected a string");
  return j.get<std::string>();
}

double number_of(const Json& j, const std::string& where) {
  if (!j.is_number()) schema(where + ": expected a number");
  return j.get<double>();
}

Complex complex_of(const Json& j, const std::string& where) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    schema(where + ": expected [re, im]");
  }
  return Complex(j[0].get<double>(), j[1].get<double>());
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

std::vector<std::string> labels_of(const Json& j, const std::string& where) {
  if (!j.is_array()) schema(where + ": expected an array of labels");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(string_of(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace

Json to_json(const Tolerances& tol) {
  return Json{{"exact", tol.exact}, {"consistency", tol.consistency}, {"rank", tol.rank}, {"near_orth", tol.near_orth}};
}

Tolerances tolerances_from_json(const Json& j) {
  if (!j.is_object()) schema("tolerances: expected an object");
  Tolerances t;
  for (const auto& [k, v] : j.items()) {
    const double x = number_of(v, "tolerances." + k);
    if (k == "exact") t.exact = x;
    else if (k == "consistency") t.consistency = x;
    else if (k == "rank") t.rank = x;
    else if (k == "near_orth") t.near_orth = x;
    else schema("tolerances: unknown key \"" + k + "\"");
  }
  t.validate();
  return t;
}

Json to_json(const StateVector& v) {
  Json a = Json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(complex_json(v(i)));
  return a;
}

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

StateVector vector_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) schema(where + ": expected a nonempty array of complex numbers");
  StateVector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = complex_of(j[i], where + "[" + std::to_string(i) + "]");
  return v;
}

Matrix matrix_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) schema(where + ": expected a nonempty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  Matrix m(static_cast<Index>(j.size()), static_cast<Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols) schema(where + ": ragged or malformed row " + std::to_string(r));
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Index>(r), static_cast<Index>(c)) =
          complex_of(j[r][c], where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    }
  }
  return m;
}

// ---------------------------------------------------------------------------

Json to_json(const HistorySpace& hs) {
  Json steps = Json::array();
  for (std::size_t k = 0; k < hs.dynamics().step_count(); ++k) steps.push_back(to_json(hs.dynamics().step(k)));
  Json spaces = Json::array();
  for (const SampleSpace& s : hs.sample_spaces()) {
    Json p = Json::array();
    for (std::size_t c = 0; c < s.size(); ++c) p.push_back(to_json(s.projector(c)));
    spaces.push_back(Json{{"labels", s.labels()}, {"projectors", std::move(p)}});
  }
  return Json{{"times", hs.dynamics().times()},
              {"steps", std::move(steps)},
              {"initial", to_json(hs.initial())},
              {"sample_spaces", std::move(spaces)}};
}

HistorySpace history_space_from_json(const Json& j, const Tolerances& tol) {
  const std::string w = "history_space";
  const Json& jt = array_field(j, "times", w);
  std::vector<double> times;
  for (std::size_t i = 0; i < jt.size(); ++i) times.push_back(number_of(jt[i], w + ".times"));
  std::vector<Matrix> steps;
  const Json& js = array_field(j, "steps", w);
  for (std::size_t i = 0; i < js.size(); ++i) steps.push_back(matrix_from_json(js[i], w + ".steps[" + std::to_string(i) + "]"));
  std::vector<SampleSpace> spaces;
  const Json& jss = array_field(j, "sample_spaces", w);
  for (std::size_t i = 0; i < jss.size(); ++i) {
    const std::string wi = w + ".sample_spaces[" + std::to_string(i) + "]";
    const auto labels = labels_of(field(jss[i], "labels", wi), wi + ".labels");
    const Json& jp = array_field(jss[i], "projectors", wi);
    std::vector<Matrix> ps;
    for (std::size_t c = 0; c < jp.size(); ++c) ps.push_back(matrix_from_json(jp[c], wi + ".projectors[" + std::to_string(c) + "]"));
    spaces.push_back(SampleSpace::make(std::move(ps), labels, tol));
  }
  StateVector psi0 = vector_from_json(field(j, "initial", w), w + ".initial");
  return HistorySpace::make(Dynamics::make(std::move(times), std::move(steps), tol), std::move(spaces), std::move(psi0), tol);
}

Json to_json(const Partition& p) {
  Json blocks = Json::array();
  for (std::size_t i = 0; i < p.size(); ++i) blocks.push_back(Json{{"label", p.label(i)}, {"frame", to_json(p.block(i).frame())}});
  return blocks;
}

Partition partition_from_json(const Json& j, const Tolerances& tol, const std::string& where) {
  if (!j.is_array() || j.empty()) schema(where + ": expected a nonempty array of blocks");
  std::vector<Event> blocks;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string wi = where + "[" + std::to_string(i) + "]";
    labels.push_back(string_of(field(j[i], "label", wi), wi + ".label"));
    blocks.push_back(Event::from_frame(matrix_from_json(field(j[i], "frame", wi), wi + ".frame"), tol));
  }
  return Partition::make(std::move(blocks), std::move(labels), tol);
}

Json to_json(const Strategy& s) {
  Json j{{"kind", s.name()}, {"utilities", s.utilities}, {"threshold", s.threshold}};
  if (!s.grain.empty()) j["grain"] = s.grain;
  return j;
}

Strategy strategy_from_json(const Json& j) {
  const std::string w = "strategy";
  Strategy s;
  s.kind = strategy_from_string(string_of(field(j, "kind", w), w + ".kind"));
  if (j.contains("utilities")) {
    const Json& u = j["utilities"];
    if (!u.is_object()) schema(w + ".utilities: expected an object");
    for (const auto& [k, v] : u.items()) s.utilities[k] = number_of(v, w + ".utilities." + k);
  }
  if (j.contains("threshold")) s.threshold = number_of(j["threshold"], w + ".threshold");
  if (j.contains("grain")) {
    if (!j["grain"].is_object()) schema(w + ".grain: expected an object");
    for (const auto& [k, v] : j["grain"].items()) s.grain[k] = string_of(v, w + ".grain." + k);
  }
  return s;
}

Json to_json(const DecisionProblem& dp, const Strategy* strategy, const StateVector* state) {
  const auto& alg = dp.algebra();
  Json rewards = Json::array();
  for (std::size_t r = 0; r < dp.rewards().size(); ++r) {
    Json ms = Json::array();
    for (std::size_t i : dp.reward_member(r)) ms.push_back(dp.macrostates().label(i));
    rewards.push_back(Json{{"label", dp.rewards().label(r)}, {"macrostates", std::move(ms)}});
  }
  Json acts = Json::array();
  for (const auto& [member, list] : dp.acts()) {
    Json domain = Json::array();
    for (std::size_t i : member) domain.push_back(dp.macrostates().label(i));
    const Event domain_event = alg.event_of(member);
    const Matrix& f = domain_event.frame();
    for (const Act& a : list) {
      const Matrix canon = a.matrix() * (a.domain().frame().adjoint() * f);
      acts.push_back(Json{{"label", a.label()}, {"domain", domain}, {"matrix", to_json(canon)}});
    }
  }
  Json j{{"macrostates", to_json(dp.macrostates())}, {"rewards", std::move(rewards)}, {"acts", std::move(acts)}};
  if (strategy) j["strategy"] = to_json(*strategy);
  if (state) j["state"] = to_json(*state);
  return j;
}

DecisionProblem decision_problem_from_json(const Json& j, const Tolerances& tol) {
  const std::string w = "decision_problem";
  Partition macro = partition_from_json(field(j, "macrostates", w), tol, w + ".macrostates");
  const Index n = macro.ambient_dim();
  const Json& jr = array_field(j, "rewards", w);
  std::vector<Event> rblocks;
  std::vector<std::string> rlabels;
  std::map<std::string, std::string> reward_of;
  for (std::size_t r = 0; r < jr.size(); ++r) {
    const std::string wr = w + ".rewards[" + std::to_string(r) + "]";
    const std::string label = string_of(field(jr[r], "label", wr), wr + ".label");
    Event e = Event::zero(n);
    for (const auto& m : labels_of(field(jr[r], "macrostates", wr), wr + ".macrostates")) {
      const auto idx = macro.index_of(m);
      if (!idx) schema(wr + ": unknown macrostate \"" + m + "\"");
      if (!reward_of.emplace(m, label).second) schema(wr + ": macrostate \"" + m + "\" already has a reward");
      e = join(e, macro.block(*idx), tol);
    }
    rblocks.push_back(std::move(e));
    rlabels.push_back(label);
  }
  DecisionProblem dp = DecisionProblem::make(macro, Partition::make(std::move(rblocks), std::move(rlabels), tol),
                                             std::move(reward_of), tol);
  if (j.contains("acts")) {
    const Json& ja = j["acts"];
    if (!ja.is_array()) schema(w + ".acts: expected an array");
    for (std::size_t a = 0; a < ja.size(); ++a) {
      const std::string wa = w + ".acts[" + std::to_string(a) + "]";
      BlockSet member;
      for (const auto& m : labels_of(field(ja[a], "domain", wa), wa + ".domain")) {
        const auto idx = dp.macrostates().index_of(m);
        if (!idx) schema(wa + ": unknown macrostate \"" + m + "\"");
        member.push_back(*idx);
      }
      std::sort(member.begin(), member.end());
      member.erase(std::unique(member.begin(), member.end()), member.end());
      if (member.empty()) schema(wa + ": empty domain");
      const Event domain = dp.algebra().event_of(member);
      dp.add_act(Act::make(domain, matrix_from_json(field(ja[a], "matrix", wa), wa + ".matrix"),
                           string_of(field(ja[a], "label", wa), wa + ".label"), tol));
    }
  }
  return dp;
}

// ---------------------------------------------------------------------------

Json scenario_file(const std::string& kind, const Json& payload, const Tolerances& tol) {
  return Json{{"version", 1}, {"kind", kind}, {"tolerances", to_json(tol)}, {"payload", payload}};
}

Scenario scenario_from_json(const Json& j) {
  if (!j.is_object()) schema("scenario: expected an object");
  const Json& version = field(j, "version", "scenario");
  if (!version.is_number_integer() || version.get<int>() != 1) schema("scenario: unsupported version (expected 1)");
  Scenario s;
  s.kind = string_of(field(j, "kind", "scenario"), "scenario.kind");
  if (j.contains("tolerances")) s.tol = tolerances_from_json(j["tolerances"]);
  const Json& p = field(j, "payload", "scenario");
  if (!p.is_object()) schema("scenario.payload: expected an object");

  auto read_dp = [&](const Json& d) {
    s.decision_problem = decision_problem_from_json(d, s.tol);
    if (d.contains("strategy")) s.strategy = strategy_from_json(d["strategy"]);
    if (d.contains("state")) s.state = vector_from_json(d["state"], "decision_problem.state");
  };

  if (s.kind == "history_space") {
    s.history_space = history_space_from_json(p, s.tol);
  } else if (s.kind == "decision_problem") {
    read_dp(p);
  } else if (s.kind == "bundle") {
    if (p.contains("history_space")) s.history_space = history_space_from_json(p["history_space"], s.tol);
    if (p.contains("decision_problem")) read_dp(p["decision_problem"]);
    if (p.contains("strategy")) s.strategy = strategy_from_json(p["strategy"]);
    if (p.contains("state")) s.state = vector_from_json(p["state"], "payload.state");
    if (p.contains("partitions")) {
      const Json& jp = p["partitions"];
      if (!jp.is_array()) schema("payload.partitions: expected an array");
      for (std::size_t i = 0; i < jp.size(); ++i) {
        const std::string wi = "payload.partitions[" + std::to_string(i) + "]";
        s.partitions.push_back(NamedPartition{string_of(field(jp[i], "name", wi), wi + ".name"),
                                              partition_from_json(field(jp[i], "blocks", wi), s.tol, wi + ".blocks")});
      }
    }
  } else {
    schema("scenario.kind: unknown kind \"" + s.kind + "\"");
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::invalid_argument, "cannot open '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    schema(path + ": malformed JSON (" + e.what() + ")");
  }
  return scenario_from_json(j);
}

}  // namespace branchlab
