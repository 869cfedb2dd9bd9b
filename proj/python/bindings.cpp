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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "branchlab/cli.hpp"
#include "branchlab/measures.hpp"
#include "branchlab/scenario_io.hpp"
#include "branchlab/random.hpp"
#include "branchlab/scenarios.hpp"

namespace py = pybind11;
using namespace branchlab;

namespace {

Partition partition_of(const std::vector<Matrix>& frames, const std::vector<std::string>& labels) {
  std::vector<Event> blocks;
  for (const Matrix& f : frames) blocks.push_back(Event::from_frame(f));
  return Partition::make(std::move(blocks), labels);
}

py::dict profile_dict(const BranchProfile& p) {
  py::dict d;
  for (std::size_t i = 0; i < p.labels.size(); ++i) d[py::str(p.labels[i])] = p.weights[i];
  return d;
}

py::dict axiom_dict(const AxiomReport& r) {
  py::dict d;
  d["axiom"] = r.axiom;
  d["strategy"] = r.strategy;
  d["passed"] = r.pass;
  d["witnesses"] = r.witnesses;
  d["numerics"] = r.numerics;
  d["checked"] = r.checked;
  return d;
}

}  // namespace

PYBIND11_MODULE(_branchlab, m) {
  m.doc() = "branchlab core";

  py::register_exception<Error>(m, "BranchlabError", PyExc_ValueError);

  py::class_<HistorySpace>(m, "HistorySpace")
      .def_static("from_json", [](const std::string& text) {
        const Scenario sc = scenario_from_json(Json::parse(text));
        if (!sc.history_space) throw Error(ErrorCode::schema, "no history_space in scenario");
        return *sc.history_space;
      })
      .def("to_json", [](const HistorySpace& hs) { return scenario_file("history_space", to_json(hs), {}).dump(); })
      .def_property_readonly("ambient_dim", &HistorySpace::ambient_dim)
      .def_property_readonly("time_count", &HistorySpace::time_count)
      .def_property_readonly("history_count", &HistorySpace::history_count)
      .def("branches", [](const HistorySpace& hs) {
        std::vector<std::pair<std::string, double>> out;
        for (const Branch& b : enumerate_branches(hs)) out.emplace_back(hs.describe(b.history), b.weight);
        return out;
      });

  m.def("consistency", [](const HistorySpace& hs) {
    const ConsistencyReport r = consistency_report(hs);
    py::dict d;
    d["consistent"] = r.consistent;
    d["max_overlap"] = r.max_overlap;
    d["offender_count"] = r.offender_count;
    d["history_count"] = r.history_count;
    return d;
  });
  m.def("is_branching", [](const HistorySpace& hs) { return is_branching(hs); });
  m.def("bc_refine", [](const HistorySpace& hs) { return bc_refine(hs); });
  m.def("measurement_model", [](const std::vector<Complex>& coeffs, std::size_t times) {
    return build_measurement_model(coeffs, times);
  }, py::arg("coeffs"), py::arg("times") = 1);

  m.def("born_weights", [](const StateVector& psi, const std::vector<Matrix>& frames,
                           const std::vector<std::string>& labels) {
    return profile_dict(born_weights(psi, partition_of(frames, labels)));
  }, py::arg("psi"), py::arg("frames"), py::arg("labels"));
  m.def("branch_count", [](const StateVector& psi, const std::vector<Matrix>& frames,
                           const std::vector<std::string>& labels, double theta) {
    return branch_count(psi, partition_of(frames, labels), theta);
  }, py::arg("psi"), py::arg("frames"), py::arg("labels"), py::arg("theta") = kDefaultCountThreshold);

  py::class_<DecisionProblem>(m, "DecisionProblem")
      .def_static("from_json", [](const std::string& text) {
        const Scenario sc = scenario_from_json(Json::parse(text));
        if (!sc.decision_problem) throw Error(ErrorCode::schema, "no decision_problem in scenario");
        return *sc.decision_problem;
      })
      .def_property_readonly("ambient_dim", &DecisionProblem::ambient_dim)
      .def("richness", [](const DecisionProblem& dp) {
        py::dict d;
        for (const auto& c : check_richness(dp).conditions) d[py::str(c.name)] = c.pass;
        return d;
      })
      .def("axiom_suite", [](const DecisionProblem& dp, const std::string& strategy,
                             const std::map<std::string, double>& utilities, std::uint64_t seed) {
        Strategy s;
        s.kind = strategy_from_string(strategy);
        s.utilities = utilities;
        SuiteOptions so;
        so.sampling.seed = seed;
        so.continuity.seed = seed;
        py::list out;
        for (const auto& r : run_axiom_suite(dp, s, so)) out.append(axiom_dict(r));
        return out;
      }, py::arg("strategy"), py::arg("utilities"), py::arg("seed") = kDefaultSeed);

  m.def("abc_values", [](const std::string& strategy, double theta) {
    const AbcBets ab = build_abc_bets();
    Strategy s = ab.utilities;
    s.kind = strategy_from_string(strategy);
    s.threshold = theta;
    std::map<std::string, double> out;
    for (const Act& a : ab.dp.acts_at(ab.ready_member)) out[a.label()] = evaluate(s, ab.dp, ab.ready, a);
    return out;
  }, py::arg("strategy") = "born_eu", py::arg("theta") = 1e-6);

  m.def("erasure", [](double separation, bool distinct) {
    const ErasureDemo d = build_erasure_contradiction(separation, distinct);
    py::dict r;
    r["defect"] = d.lift.defect;
    r["feasible"] = d.lift.feasible();
    r["inner_before"] = d.inner_before;
    r["inner_after"] = d.inner_after;
    return r;
  }, py::arg("separation") = 0.0, py::arg("distinct_targets") = false);

  m.def("reward_availability", [](bool whole_space) {
    const RewardAvailabilityDemo d = build_reward_availability_contradiction(whole_space);
    py::dict r;
    r["feasible"] = d.result.feasible();
    py::list ledger;
    for (const auto& e : d.result.ledger) ledger.append(py::make_tuple(e.reward, e.required, e.available));
    r["ledger"] = ledger;
    return r;
  }, py::arg("whole_space_reward") = false);

  m.def("spreading_tail", [](std::size_t n, std::size_t steps) {
    const SpreadingTail d = build_spreading_tail(n, steps);
    py::dict r;
    r["cell_weights"] = d.cell_weights;
    r["smallest_event_size"] = d.smallest.size();
    return r;
  }, py::arg("n"), py::arg("steps"));

  m.def("pointer_decomposition", [](std::size_t n, double sigma, double shift) {
    const PointerDecomposition d = build_pointer_decompositions(n, sigma, shift);
    py::dict r;
    r["psi"] = d.psi;
    r["residual_a"] = d.residual_a;
    r["residual_b"] = d.residual_b;
    r["deviation"] = d.deviation;
    r["cross"] = Eigen::MatrixXd(d.cross.real());
    return r;
  }, py::arg("n"), py::arg("sigma"), py::arg("shift") = 0.5);

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
