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

// Scenario files, schema version 1.
//
//   { "version": 1,
//     "kind": "history_space" | "decision_problem" | "bundle",
//     "tolerances": { "exact": .., "consistency": .., "rank": .., "near_orth": .. },   (optional)
//     "payload": { ... } }
//
// Complex numbers are [re, im]; matrices are arrays of rows (row-major).
//
// history_space payload:
//   { "times": [t0..tn], "steps": [matrix..], "initial": [complex..],
//     "sample_spaces": [ { "labels": [..], "projectors": [matrix..] } .. ] }
//
// decision_problem payload:
//   { "macrostates": [ { "label": .., "frame": matrix (dim x rank) } .. ],
//     "rewards": [ { "label": .., "macrostates": [label..] } .. ],
//     "acts": [ { "label": .., "domain": [macrostate label..], "matrix": matrix } .. ],
//     "strategy": { "kind": .., "utilities": {reward: u}, "threshold": .. },   (optional)
//     "state": [complex..] }                                                  (optional)
// An act matrix is (dim x rank of domain) in the domain's frame: the
// macrostate frames concatenated in macrostate order.
//
// bundle payload: any of "history_space", "decision_problem" (objects as
// above), "state", and "partitions": [ { "name": .., "blocks": [ { "label",
// "frame" } .. ] } .. ] for the measure command.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "branchlab/axioms.hpp"
#include "branchlab/decision.hpp"
#include "branchlab/histories.hpp"
#include "json.hpp"

namespace branchlab {

using Json = nlohmann::json;

Json to_json(const Tolerances& tol);
Tolerances tolerances_from_json(const Json& j);

Json to_json(const StateVector& v);
Json to_json(const Matrix& m);
StateVector vector_from_json(const Json& j, const std::string& where);
Matrix matrix_from_json(const Json& j, const std::string& where);

Json to_json(const HistorySpace& hs);
HistorySpace history_space_from_json(const Json& j, const Tolerances& tol);

Json to_json(const Partition& p);
Partition partition_from_json(const Json& j, const Tolerances& tol, const std::string& where);

Json to_json(const DecisionProblem& dp, const Strategy* strategy = nullptr, const StateVector* state = nullptr);
DecisionProblem decision_problem_from_json(const Json& j, const Tolerances& tol);
Json to_json(const Strategy& s);
Strategy strategy_from_json(const Json& j);

struct NamedPartition {
  std::string name;
  Partition partition;
};

struct Scenario {
  std::string kind;
  Tolerances tol;
  std::optional<HistorySpace> history_space;
  std::optional<DecisionProblem> decision_problem;
  std::optional<Strategy> strategy;
  std::optional<StateVector> state;
  std::vector<NamedPartition> partitions;
};

/// Throws Error(schema) on any structural problem, and the usual domain
/// errors when the content is invalid.
Scenario scenario_from_json(const Json& j);
Scenario load_scenario(const std::string& path);

Json scenario_file(const std::string& kind, const Json& payload, const Tolerances& tol);

}  // namespace branchlab
