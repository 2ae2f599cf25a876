// Copyright 2026 The netbargain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.h"
#include "doctest.h"
#include "json.hpp"

namespace netbargain::cli {
namespace {

using Json = nlohmann::json;

constexpr const char* kK3 =
    R"({"mode":"GeneralUnitCap","agents":[{"id":"a"},{"id":"b"},{"id":"c"}],)"
    R"("edges":[{"u":"a","v":"b","w":"1"},{"u":"b","v":"c","w":"1"},{"u":"a","v":"c","w":"1"}]})";
constexpr const char* kP4 =
    R"({"mode":"GeneralUnitCap","agents":[{"id":"a"},{"id":"b"},{"id":"c"},{"id":"d"}],)"
    R"("edges":[{"u":"a","v":"b","w":"1"},{"u":"b","v":"c","w":"1"},{"u":"c","v":"d","w":"1"}]})";
constexpr const char* kP3 =
    R"({"mode":"ConstrainedBipartite","agents":[{"id":"a","side":"A","capacity":1},)"
    R"({"id":"b","side":"B","capacity":1},{"id":"c","side":"A","capacity":1}],)"
    R"("edges":[{"u":"a","v":"b","w":"1"},{"u":"b","v":"c","w":"1"}]})";

std::string WriteFile(const std::string& name, const std::string& content) {
  const auto dir = std::filesystem::temp_directory_path() / "netbargain_cli_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path) << content;
  return path.string();
}

struct Run {
  int code;
  std::string out;
  std::string err;
  Json report() const { return Json::parse(out); }
};

Run Invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = CliMain(args, out, err);
  return {code, out.str(), err.str()};
}

TEST_CASE("gap on the triangle") {
  const Run r = Invoke({"gap", WriteFile("k3.json", kK3)});
  REQUIRE(r.code == kExitOk);
  const Json report = r.report();
  CHECK(report["command"] == "gap");
  CHECK(report["result"]["lp_value"] == "3/2");
  CHECK(report["result"]["ip_value"] == "1");
  CHECK(report["result"]["integral"] == false);
  CHECK(report["instance"]["mode"] == "GeneralUnitCap");
  CHECK(report["instance_hash"].get<std::string>().size() == 16);
}

TEST_CASE("stable exit codes") {
  const Run none = Invoke({"stable", WriteFile("k3.json", kK3)});
  CHECK(none.code == kExitNonexistence);
  CHECK(none.report()["result"]["status"] == "nonexistent");
  CHECK(none.report()["result"]["certificate"]["lp_value"] == "3/2");

  const Run ok = Invoke({"stable", WriteFile("p3.json", kP3)});
  CHECK(ok.code == kExitOk);
  CHECK(ok.report()["result"]["outcome"]["earnings"] == Json{{"a", "0"}, {"b", "1"}, {"c", "0"}});
}

TEST_CASE("nucleolus methods") {
  const Run brute = Invoke({"nucleolus", WriteFile("p4.json", kP4), "--method", "brute"});
  REQUIRE(brute.code == kExitOk);
  CHECK(brute.report()["result"]["allocation"] ==
        Json{{"a", "1/3"}, {"b", "2/3"}, {"c", "2/3"}, {"d", "1/3"}});
  const Run pruned = Invoke({"nucleolus", WriteFile("p3.json", kP3)});
  CHECK(pruned.report()["result"]["method"] == "pruned");
  CHECK(pruned.report()["result"]["levels"].size() >= 1);
  CHECK(Invoke({"nucleolus", WriteFile("p4.json", kP4), "--method", "pruned"}).code == kExitError);
}

TEST_CASE("balanced converges or reports") {
  const std::string p4 = WriteFile("p4.json", kP4);
  const Run ok = Invoke({"balanced", p4, "--tol", "1/1000000"});
  CHECK(ok.code == kExitOk);
  CHECK(ok.report()["result"]["status"] == "converged");
  const Run stuck = Invoke({"balanced", p4, "--tol", "0", "--max-rounds", "2", "--schedule", "roundrobin"});
  if (stuck.report()["result"]["rounds"] == 2) {
    CHECK(stuck.code == kExitNoConvergence);
  } else {
    CHECK(stuck.code == kExitOk);
  }
  CHECK(Invoke({"balanced", WriteFile("k3.json", kK3)}).code == kExitNonexistence);
}

TEST_CASE("membership checks") {
  const std::string p3 = WriteFile("p3.json", kP3);
  const std::string good = WriteFile("good.json", R"({"allocation":{"a":"0","b":"1","c":"0"}})");
  const std::string bad = WriteFile("bad.json", R"({"a":"1/2","b":"1/2","c":"0"})");
  const Run in = Invoke({"core-check", p3, "--alloc", good});
  CHECK(in.code == kExitOk);
  CHECK(in.report()["result"]["in_core"] == true);
  const Run out = Invoke({"core-check", p3, "--alloc", bad});
  CHECK(out.report()["result"]["in_core"] == false);
  CHECK(out.report()["result"]["witness"] == Json{"b", "c"});
  CHECK(out.report()["result"]["deficiency"] == "1/2");
  const Run pk = Invoke({"prekernel-check", p3, "--alloc", good});
  CHECK(pk.report()["result"]["in_prekernel"] == true);
  const Run loose = Invoke({"prekernel-check", p3, "--alloc", bad, "--tol", "1"});
  CHECK(loose.report()["result"]["in_prekernel"] == true);
}

TEST_CASE("oracle dump") {
  const Run r = Invoke({"oracle", WriteFile("p3.json", kP3), "--jobs", "2"});
  REQUIRE(r.code == kExitOk);
  const Json result = r.report()["result"];
  CHECK(result["game_table"].size() == 8);
  CHECK(result["game_table"][3]["value"] == "1");
  CHECK(result["core"]["empty"] == false);
  CHECK(result["nucleolus_reference"] == Json{{"a", "0"}, {"b", "1"}, {"c", "0"}});
  const Run k3 = Invoke({"oracle", WriteFile("k3.json", kK3)});
  CHECK(k3.report()["result"]["core"]["empty"] == true);
}

TEST_CASE("gen is deterministic and feeds other commands") {
  const std::vector<std::string> args{"gen", "--na", "4", "--nb", "2", "--cap-max", "3",
                                      "--density", "0.35", "--seed", "7"};
  const Run first = Invoke(args);
  const Run second = Invoke(args);
  REQUIRE(first.code == kExitOk);
  CHECK(first.out == second.out);
  CHECK(first.report()["result"]["params"]["density"] == "7/20");
  const Run nucleolus = Invoke({"nucleolus", WriteFile("gen.json", first.out)});
  CHECK(nucleolus.code == kExitOk);
}

TEST_CASE("reports are byte-identical across runs") {
  const std::string p4 = WriteFile("p4.json", kP4);
  for (const char* command : {"stable", "balanced", "nucleolus", "gap", "oracle"}) {
    CHECK(Invoke({command, p4}).out == Invoke({command, p4}).out);
  }
  CHECK(Invoke({"gap", p4, "--timing"}).report().contains("wall_time_ms"));
  CHECK_FALSE(Invoke({"gap", p4}).report().contains("wall_time_ms"));
}

TEST_CASE("usage and input errors") {
  CHECK(Invoke({}).code == kExitUsage);
  CHECK(Invoke({"frobnicate"}).code == kExitUsage);
  CHECK(Invoke({"stable"}).code == kExitUsage);
  CHECK(Invoke({"nucleolus", "x.json", "--method", "simplex"}).code == kExitUsage);
  CHECK(Invoke({"core-check", WriteFile("p3.json", kP3)}).code == kExitUsage);
  const Run missing = Invoke({"stable", "/nonexistent/instance.json"});
  CHECK(missing.code == kExitError);
  CHECK(missing.err.find("cannot open") != std::string::npos);
  CHECK(Invoke({"stable", WriteFile("broken.json", "{")}).code == kExitError);
  CHECK(Invoke({"--help"}).code == kExitOk);
}

}  // namespace
}  // namespace netbargain::cli
