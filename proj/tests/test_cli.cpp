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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "branchlab/scenario_io.hpp"
#include "branchlab/scenarios.hpp"
#include "doctest.h"

using namespace branchlab;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "branchlab_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("measurement demo") {
  const Run r = run({"demo", "measurement", "--coeffs", "3,4"});
  CHECK(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(std::abs(j["weights"]["(s0)"].get<double>() - 0.36) <= 1e-12);
  CHECK(std::abs(j["weights"]["(s1)"].get<double>() - 0.64) <= 1e-12);
  CHECK(j["header"]["tolerances"]["exact"] == 1e-10);
  CHECK(j["header"].contains("seed"));
}

TEST_CASE("erasure demo is a finding") {
  const Run r = run({"demo", "erasure"});
  CHECK(r.code == 2);
  CHECK(Json::parse(r.out)["defect"].get<double>() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(run({"demo", "erasure", "--distinct"}).code == 0);
}

TEST_CASE("other demos and their exit codes") {
  CHECK(run({"demo", "reward-availability"}).code == 2);
  CHECK(run({"demo", "reward-availability", "--whole-space"}).code == 0);
  CHECK(run({"demo", "spreading-tail", "--grid", "16", "--steps", "1"}).code == 2);
  CHECK(run({"demo", "spreading-tail", "--grid", "16", "--steps", "0"}).code == 0);
  CHECK(run({"demo", "pointer-decomp", "--grid", "32", "--sigma", "1.5"}).code == 2);
  CHECK(run({"demo", "pointer-decomp", "--grid", "16", "--sigma", "0.05", "--shift", "1"}).code == 0);
}

TEST_CASE("input errors exit 1 with a one-line diagnostic") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"frobnicate"},
           {},
           {"demo", "unicorns"},
           {"check-consistency", "/nonexistent/file.json"},
           {"demo", "measurement", "--coeffs", "x"},
           {"demo", "spreading-tail", "--grid", "99"},
           {"demo", "measurement", "--seed", "-3"}}) {
    const Run r = run(args);
    CHECK(r.code == 1);
    CHECK(r.err.rfind("error: ", 0) == 0);
    CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
  }
  const fs::path bad = scratch("malformed.json");
  std::ofstream(bad) << "{ not json";
  CHECK(run({"check-richness", bad.string()}).code == 1);
  const fs::path v2 = scratch("v2.json");
  std::ofstream(v2) << R"({"version": 2, "kind": "bundle", "payload": {}})";
  const Run r = run({"check-richness", v2.string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("SchemaError") != std::string::npos);
}

TEST_CASE("check-axioms on the exported ABC file") {
  const fs::path abc = scratch("abc.json");
  REQUIRE(run({"demo", "abc-bets", "--export", abc.string()}).code == 0);
  const Run r = run({"check-axioms", abc.string(), "--strategy", "born_eu"});
  CHECK(r.code == 0);
  const Json j = Json::parse(r.out);
  bool found = false;
  for (const auto& v : j["values"]) {
    if (v["domain"] != "{ready}") continue;
    found = true;
    CHECK(v["state"] == "file");
    CHECK(std::abs(v["values"]["A"].get<double>() - 450.0) <= 1e-9);
    CHECK(std::abs(v["values"]["B"].get<double>() - 500.0) <= 1e-9);
    CHECK(std::abs(v["values"]["C"].get<double>() - 725.0) <= 1e-9);
    CHECK(v["order"] == Json::array({"C", "B", "A", "1"}));
  }
  CHECK(found);
  for (const auto& a : j["axioms"]) CHECK(a["pass"] == true);

  CHECK(run({"check-axioms", abc.string(), "--strategy", "counting_eu"}).code == 2);
  CHECK(run({"check-axioms", abc.string(), "--strategy", "nonsense"}).code == 1);
  CHECK(run({"check-axioms", abc.string(), "--utilities", "cash0=1"}).code == 1);  // missing rewards
}

TEST_CASE("check-consistency and check-richness on exported files") {
  const fs::path m = scratch("meas.json");
  REQUIRE(run({"demo", "measurement", "--coeffs", "1,2,2", "--export", m.string()}).code == 0);
  const Run r = run({"check-consistency", m.string()});
  CHECK(r.code == 0);
  CHECK(Json::parse(r.out)["consistency"]["consistent"] == true);

  // A non-branching consistent space is reported as a finding with its
  // refinement.
  const fs::path rr = scratch("recorded.json");
  std::ofstream(rr) << scenario_file("history_space", to_json(build_recorded_recombination()), {}).dump();
  const Run nb = run({"check-consistency", rr.string()});
  CHECK(nb.code == 2);
  const Json j = Json::parse(nb.out);
  CHECK(j["branching"]["branching"] == false);
  CHECK(j["refinement"]["branching"] == true);
  CHECK(j["refinement"]["refines_original"] == true);

  const fs::path abc = scratch("abc2.json");
  REQUIRE(run({"demo", "abc-bets", "--export", abc.string()}).code == 0);
  const Run ri = run({"check-richness", abc.string()});
  CHECK(ri.code == 2);
  CHECK(Json::parse(ri.out)["full_space_empty"] == true);
}

TEST_CASE("measure along a grain chain") {
  const Partition fine = Partition::standard_basis(4, "e");
  std::vector<StateVector> lo{StateVector::Unit(4, 0), StateVector::Unit(4, 1)};
  std::vector<StateVector> hi{StateVector::Unit(4, 2), StateVector::Unit(4, 3)};
  const Partition coarse = Partition::make({span(lo), span(hi)}, {"lo", "hi"});
  StateVector psi(4);
  psi << 0.0, 0.0, 0.6, 0.8;
  const Json payload{{"state", to_json(psi)},
                     {"partitions", Json::array({Json{{"name", "coarse"}, {"blocks", to_json(coarse)}},
                                                 Json{{"name", "fine"}, {"blocks", to_json(fine)}}})}};
  const fs::path f = scratch("measure.json");
  std::ofstream(f) << scenario_file("bundle", payload, {}).dump();

  const Run unstable = run({"measure", f.string(), "--grain-chain", "coarse,fine"});
  CHECK(unstable.code == 2);
  CHECK(Json::parse(unstable.out)["counts"] == Json::array({1, 2}));
  const Run stable = run({"measure", f.string(), "--grain-chain", "coarse,coarse"});
  CHECK(stable.code == 0);
  CHECK(run({"measure", f.string(), "--grain-chain", "fine,coarse"}).code == 1);
  CHECK(run({"measure", f.string(), "--grain-chain", "medium"}).code == 1);
  const Run high = run({"measure", f.string(), "--theta", "0.5"});
  CHECK(Json::parse(high.out)["counts"] == Json::array({1, 1}));
}

TEST_CASE("--out and --csv write files") {
  const fs::path out = scratch("report.json");
  const fs::path csv = scratch("table.csv");
  const Run r = run({"--out", out.string(), "--csv", csv.string(), "demo", "spreading-tail", "--grid", "8"});
  CHECK(r.out.empty());
  CHECK(Json::parse(slurp(out))["grid"] == 8);
  const std::string table = slurp(csv);
  CHECK(table.rfind("cell,weight\n", 0) == 0);
  CHECK(std::count(table.begin(), table.end(), '\n') == 9);
  // Flags also work after the subcommand.
  CHECK(run({"demo", "erasure", "--out", out.string()}).out.empty());
}

TEST_CASE("seed precedence and determinism") {
  const fs::path abc = scratch("abc3.json");
  REQUIRE(run({"demo", "abc-bets", "--export", abc.string()}).code == 0);
  const Run a = run({"check-axioms", abc.string(), "--strategy", "counting_eu", "--seed", "5"});
  const Run b = run({"check-axioms", abc.string(), "--strategy", "counting_eu", "--seed", "5"});
  CHECK(a.out == b.out);
  CHECK(Json::parse(a.out)["header"]["seed"] == 5);

  ::setenv("BRANCHLAB_SEED", "77", 1);
  const Run env = run({"demo", "measurement"});
  const Run flag = run({"demo", "measurement", "--seed", "9"});
  ::unsetenv("BRANCHLAB_SEED");
  CHECK(Json::parse(env.out)["header"]["seed"] == 77);
  CHECK(Json::parse(flag.out)["header"]["seed"] == 9);
  CHECK(Json::parse(run({"demo", "measurement"}).out)["header"]["seed"] == 20170829);
}

TEST_CASE("help exits 0") {
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"demo", "--help"}).code == 0);
}

}  // TEST_SUITE
