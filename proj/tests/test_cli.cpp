// Copyright 2026 The pcanon authors
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

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "pcanon/mdp.hpp"
#include "pcanon/scaling.hpp"
#include "support.hpp"

using namespace pcanon;
using namespace testsupport;
using nlohmann::ordered_json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_raw(const std::string& cmd_line) {
  const std::string cmd = cmd_line + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  char buf[4096];
  while (std::size_t got = fread(buf, 1, sizeof buf, pipe))
    output.append(buf, got);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), output};
}

// Runs the installed command-line binary and captures combined output.
RunResult run_cli(const std::string& args) {
  return run_raw(std::string(PCANON_CLI_PATH) + " " + args);
}

std::string temp_path(const std::string& name) { return "/tmp/pcanon_test_" + name; }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  out << text;
  REQUIRE(out.good());
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

std::string worked_path() {
  const auto p = temp_path("worked.json");
  write_text(p, worked_instance_json());
  return p;
}

}  // namespace

TEST_CASE("check command verdicts and exit codes") {
  const auto r = run_cli("check " + worked_path());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("sign +1") != std::string::npos);

  const auto bad = temp_path("violation.json");
  write_text(bad, "{\"m\":1,\"blocks\":[2],\"rows\":[[\"1\",\"-1\"]]}");
  CHECK(run_cli("check " + bad).exit_code == 2);

  const auto garbage = temp_path("garbage.json");
  write_text(garbage, "not a matrix");
  CHECK(run_cli("check " + garbage).exit_code == 4);
  CHECK(run_cli("check " + temp_path("missing.json")).exit_code == 4);
}

TEST_CASE("zform command reproduces the worked canonical form") {
  const auto out = temp_path("zf_out.json");
  const auto r = run_cli("zform " + worked_path() + " --out " + out);
  REQUIRE(r.exit_code == 0);
  const auto payload = ordered_json::parse(read_text(out));
  const auto xbar = worked_xbar_rows();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(payload["xbar"][i][j].get<std::string>() == xbar[i][j]);
  const auto abar = worked_abar_rows();
  for (int i = 0; i < 3; ++i)
    for (int c = 0; c < 6; ++c)
      CHECK(payload["abar"]["rows"][i][c].get<std::string>() == abar[i][c]);
  CHECK(payload["pivots_per_row"] == ordered_json::array({1, 0, 1}));
}

TEST_CASE("scale command emits the full report") {
  const auto r = run_cli("scale " + worked_path() + " --json");
  REQUIRE(r.exit_code == 0);
  const auto report = ordered_json::parse(r.output);
  CHECK(report["command"] == "scale");
  CHECK(report["exit"] == 0);
  const auto& p = report["payload"];
  CHECK(p["d"] == "33/70");
  CHECK(p["x"] == ordered_json::array({"47/70", "38/45", "33/35"}));
  CHECK(p["argmax"] == ordered_json::array({2, 1}));
  CHECK(p["tight_columns"] ==
        ordered_json::array({ordered_json::array({1, 2}),
                             ordered_json::array({2}),
                             ordered_json::array({1})}));
  CHECK(p["pivots"]["per_row"] == ordered_json::array({1, 0, 1}));
  CHECK(p["pivots"]["scaling"] == 1);
  CHECK(p["certificates"]["scaling"]["objective"] == "33/70");
  CHECK(p["certificates"]["lp"]["objective"] == "33/70");
  CHECK(!report.contains("elapsed_ms"));

  SUBCASE("identity instance") {
    const auto id = temp_path("identity.json");
    write_text(id,
               "{\"m\":2,\"blocks\":[1,1],\"rows\":[[\"1\",\"0\"],"
               "[\"0\",\"1\"]]}");
    const auto rid = run_cli("scale " + id + " --json");
    REQUIRE(rid.exit_code == 0);
    CHECK(ordered_json::parse(rid.output)["payload"]["d"] == "1");
  }
  SUBCASE("decimal annotations are opt-in and marked") {
    const auto rd = run_cli("scale " + worked_path() + " --json --decimal 5");
    const auto pd = ordered_json::parse(rd.output)["payload"];
    REQUIRE(pd.contains("approx"));
    CHECK(pd["approx"]["note"] == "rounded decimals, non-authoritative");
    CHECK(pd["approx"]["d"] == "0.47143");
  }
}

TEST_CASE("oracle command cross-checks the pipeline") {
  const auto r = run_cli("oracle " + worked_path() + " --json");
  REQUIRE(r.exit_code == 0);
  const auto p = ordered_json::parse(r.output)["payload"];
  CHECK(p["lp_a"] == "33/70");
  CHECK(p["scaling_lp"] == "33/70");
  CHECK(p["two_step"] == "33/70");
  CHECK(p["agree"] == true);
}

TEST_CASE("reports are byte-identical across runs") {
  const auto path = worked_path();
  const auto a = run_cli("scale " + path + " --json");
  const auto b = run_cli("scale " + path + " --json");
  CHECK(a.output == b.output);
  const auto c = run_cli("zform " + path + " --json");
  const auto d = run_cli("zform " + path + " --json");
  CHECK(c.output == d.output);
}

TEST_CASE("generator command determinism and disguise") {
  const auto out1 = temp_path("gen1.json");
  const auto out2 = temp_path("gen2.json");
  const auto base = "gen --m 2 --blocks 2,1 --gamma 1/2 --seed 9 --out ";
  REQUIRE(run_cli(base + out1).exit_code == 0);
  REQUIRE(run_cli(base + out2).exit_code == 0);
  CHECK(read_text(out1) == read_text(out2));
  CHECK(ordered_json::parse(read_text(out1 + ".meta.json")) ==
        ordered_json::parse(
            "{\"gamma\":\"1/2\",\"disguised\":false,\"seed\":9}"));

  SUBCASE("zero discount gives basis-vector columns") {
    const auto out = temp_path("gen0.json");
    REQUIRE(run_cli("gen --m 2 --blocks 2,1 --gamma 0 --seed 1 --out " + out)
                .exit_code == 0);
    const auto a = parse_block_matrix(read_text(out));
    CHECK(a == make_block({2, 1}, {{"1", "1", "0"}, {"0", "0", "1"}}));
  }
  SUBCASE("disguise defeats recognition but not the pipeline") {
    const auto out = temp_path("gen_disguised.json");
    REQUIRE(run_cli("gen --m 2 --blocks 2,1 --gamma 1/2 --seed 9 "
                    "--disguise --out " +
                    out)
                .exit_code == 0);
    const auto a = parse_block_matrix(read_text(out));
    CHECK(!mdp_recognize(a).has_value());
    CHECK(two_step(a).d > 0);
  }
  SUBCASE("bad generator parameters exit as input errors") {
    CHECK(run_cli("gen --m 2 --blocks 1,1 --gamma 3/2 --seed 1").exit_code ==
          4);
    CHECK(run_cli("gen --m 2 --blocks 1 --gamma 1/2 --seed 1").exit_code == 4);
  }
}

TEST_CASE("batch mode keeps input order and the worst exit code") {
  const auto good = worked_path();
  const auto bad = temp_path("violation.json");
  write_text(bad, "{\"m\":1,\"blocks\":[2],\"rows\":[[\"1\",\"-1\"]]}");
  const auto r =
      run_cli("check " + good + " " + bad + " " + good + " --jobs 3");
  CHECK(r.exit_code == 2);
  std::istringstream lines(r.output);
  std::string l1, l2, l3;
  std::getline(lines, l1);
  std::getline(lines, l2);
  std::getline(lines, l3);
  CHECK(l1.find("sign +1") != std::string::npos);
  CHECK(l2.find("violated") != std::string::npos);
  CHECK(l3.find("sign +1") != std::string::npos);

  SUBCASE("--out refuses multiple inputs") {
    CHECK(run_cli("zform " + good + " " + good + " --out " +
                  temp_path("multi.json"))
              .exit_code == 4);
  }
}

TEST_CASE("pivot cap override reaches the pipeline") {
  // Seeded instance whose canonical-form rows need up to three pivots.
  const auto hard = temp_path("hard.json");
  REQUIRE(run_cli("gen --m 4 --blocks 3,2,3,2 --gamma 9/10 --seed 11 --out " +
                  hard)
              .exit_code == 0);
  CHECK(run_cli("scale " + hard).exit_code == 0);
  const auto capped = run_raw("PCANON_PIVOT_CAP=1 " +
                              std::string(PCANON_CLI_PATH) + " scale " + hard);
  CHECK(capped.exit_code == 3);
  // Malformed override values fall back to the computed default.
  const auto junk = run_raw("PCANON_PIVOT_CAP=banana " +
                            std::string(PCANON_CLI_PATH) + " scale " + hard);
  CHECK(junk.exit_code == 0);
}
