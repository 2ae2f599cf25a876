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


#include "doctest.h"
#include "netbargain/error.h"
#include "netbargain/generate.h"
#include "netbargain/io.h"
#include "test_support.h"

namespace netbargain {
namespace {

using testing::Q;

constexpr const char* kP3 = R"({
  "mode": "ConstrainedBipartite",
  "agents": [
    {"id": "a", "side": "A", "capacity": 1},
    {"id": "b", "side": "B", "capacity": 1},
    {"id": "c", "side": "A", "capacity": 1}
  ],
  "edges": [{"u": "a", "v": "b", "w": "1"}, {"u": "b", "v": "c", "w": "1/3"}]
})";

std::string ErrorText(std::string_view text) {
  try {
    ParseInstance(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

TEST_CASE("parses the path document") {
  const Instance inst = ParseInstance(kP3);
  CHECK(inst.num_agents() == 3);
  CHECK(inst.num_edges() == 2);
  CHECK(inst.edge(1).weight == Q(1, 3));
  CHECK(inst.side(1) == Side::kB);
}

TEST_CASE("weights") {
  const std::string integer =
      R"({"mode":"GeneralUnitCap","agents":[{"id":"x"},{"id":"y"}],"edges":[{"u":"x","v":"y","w":7}]})";
  CHECK(ParseInstance(integer).edge(0).weight == 7);
  std::string decimal = integer;
  decimal.replace(decimal.find("7"), 1, "\"0.5\"");
  CHECK(ErrorText(decimal).find("ParseError") == 0);
  CHECK(ErrorText(decimal).find("$.edges[0].w") != std::string::npos);
  std::string floating = integer;
  floating.replace(floating.find("7"), 1, "0.5");
  CHECK(ErrorText(floating).find("ParseError") == 0);
}

TEST_CASE("syntax and structure errors") {
  CHECK(ErrorText("{\n\"mode\": ,\n}").find("line 2") != std::string::npos);
  CHECK(ErrorText(R"({"agents":[],"edges":[]})").find("$.mode") != std::string::npos);
  CHECK(ErrorText(R"({"mode":"Other","agents":[],"edges":[]})").find("unknown mode") != std::string::npos);
  CHECK(ErrorText(R"({"mode":"GeneralUnitCap","agents":[{"id":1}],"edges":[]})").find("$.agents[0].id") !=
        std::string::npos);
  CHECK(ErrorText(R"({"mode":"GeneralUnitCap","agents":[{"id":"a","side":"C"}],"edges":[]})")
            .find("$.agents[0].side") != std::string::npos);
}

TEST_CASE("validation errors pass through") {
  std::string text = kP3;
  text.replace(text.find(R"("u": "a", "v": "b")"), 18, R"("u": "a", "v": "c")");
  try {
    ParseInstance(text);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNonBipartiteEdge);
  }
}

TEST_CASE("round trip of generated instances") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    GenerateParams p;
    p.mode = static_cast<Mode>(seed % 3);
    p.num_a = 4;
    p.num_b = 3;
    p.num_agents = 6;
    p.capacity_max = 3;
    p.weight_max = 20;
    p.density = Q(1, 2);
    p.seed = seed;
    const Instance inst = Generate(p);
    const std::string text = SerializeInstance(inst);
    const Instance back = ParseInstance(text);
    CHECK(SerializeInstance(back) == text);
    CHECK(back.Fingerprint() == inst.Fingerprint());
  }
}

TEST_CASE("reports embedding an instance are accepted") {
  const std::string report = std::string(R"({"command":"gen","instance":)") + kP3 + "}";
  CHECK(ParseInstance(report).num_agents() == 3);
}

TEST_CASE("allocations") {
  const Instance inst = ParseInstance(kP3);
  const Allocation x = ParseAllocation(R"({"allocation":{"a":"0","b":"1","c":"0"}})", inst);
  CHECK(x == testing::Alloc({0, 1, 0}));
  CHECK(ParseAllocation(R"({"c":"1/2","b":0,"a":"1/2"})", inst) == testing::Alloc({Q(1, 2), 0, Q(1, 2)}));
  CHECK(ParseAllocation(SerializeAllocation(inst, x), inst) == x);
  CHECK_THROWS_AS(ParseAllocation(R"({"a":"0","b":"1"})", inst), Error);
  CHECK_THROWS_AS(ParseAllocation(R"({"a":"0","b":"1","c":"0","z":"0"})", inst), Error);
}

}  // namespace
}  // namespace netbargain
