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
#include "netbargain/model.h"
#include "test_support.h"

namespace netbargain {
namespace {

using testing::Q;

ErrorCode BuildError(const InstanceDescription& d) {
  try {
    Instance::Build(d);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a validation error");
  return ErrorCode::kInternal;
}

TEST_CASE("valid instances build") {
  const Instance edge = testing::SingleEdge();
  CHECK(edge.num_agents() == 2);
  CHECK(edge.num_edges() == 1);
  const Instance star = testing::Star();
  CHECK(star.mode() == Mode::kConstrainedBipartite);
  CHECK(star.capacity(*star.IndexOf("b")) == 2);
}

TEST_CASE("validation errors name the violated invariant") {
  InstanceDescription triangle;
  triangle.mode = Mode::kConstrainedBipartite;
  triangle.agents = {{"a", Side::kA, 1}, {"b", Side::kB, 1}, {"c", Side::kA, 1}};
  triangle.edges = {{"a", "b", 1}, {"b", "c", 1}, {"a", "c", 1}};
  CHECK(BuildError(triangle) == ErrorCode::kNonBipartiteEdge);

  InstanceDescription d;
  d.mode = Mode::kGeneralUnitCap;
  d.agents = {{"a"}, {"b"}};
  d.edges = {{"a", "a", 1}};
  CHECK(BuildError(d) == ErrorCode::kSelfLoop);
  d.edges = {{"a", "b", 1}, {"b", "a", 2}};
  CHECK(BuildError(d) == ErrorCode::kDuplicateEdge);
  d.edges = {{"a", "b", -1}};
  CHECK(BuildError(d) == ErrorCode::kNegativeWeight);
  d.edges = {{"a", "z", 1}};
  CHECK(BuildError(d) == ErrorCode::kUnknownAgent);
  d.edges = {};
  d.agents = {{"a", Side::kNone, 2}, {"b"}};
  CHECK(BuildError(d) == ErrorCode::kCapacityViolatesMode);
  d.agents = {{"a", Side::kA, 1}, {"b"}};
  CHECK(BuildError(d) == ErrorCode::kSideViolatesMode);
  d.agents = {{"a"}, {"a"}};
  CHECK(BuildError(d) == ErrorCode::kDuplicateAgent);

  InstanceDescription cb;
  cb.mode = Mode::kConstrainedBipartite;
  cb.agents = {{"a", Side::kA, 2}, {"b", Side::kB, 1}};
  CHECK(BuildError(cb) == ErrorCode::kCapacityViolatesMode);
  cb.agents = {{"a", Side::kA, 0}, {"b", Side::kB, 1}};
  CHECK(BuildError(cb) == ErrorCode::kCapacityViolatesMode);

  InstanceDescription many;
  for (int i = 0; i <= kMaxAgents; ++i) many.agents.push_back({"v" + std::to_string(i)});
  CHECK(BuildError(many) == ErrorCode::kTooManyAgents);
}

TEST_CASE("coalition values") {
  const Instance p3 = testing::P3();
  const auto a = *p3.IndexOf("a"), b = *p3.IndexOf("b"), c = *p3.IndexOf("c");
  CHECK(CoalitionValue(p3, Coalition::Of({a, c})) == 0);
  CHECK(CoalitionValue(p3, Coalition::Of({a, b})) == 1);
  CHECK(CoalitionValue(p3, Coalition()) == 0);
  CHECK(CoalitionValue(testing::Star(), testing::Star().grand()) == 5);
}

TEST_CASE("earnings") {
  const Instance edge = testing::SingleEdge();
  CHECK(Earnings(edge, testing::MakeOutcome(edge, {{"v0", "v1", 5}})) == testing::Alloc({5, 5}));

  const Instance p3 = testing::P3();
  CHECK(Earnings(p3, testing::MakeOutcome(p3, {{"a", "b", 0}})) == testing::Alloc({0, 1, 0}));

  const Instance star = testing::Star();
  const Outcome o = testing::MakeOutcome(star, {{"a1", "b", 2}, {"a2", "b", 1}});
  CHECK(Earnings(star, o) == testing::Alloc({2, 2, 1, 0}));
}

TEST_CASE("outcome invariants are enforced") {
  const Instance p3 = testing::P3();
  Outcome over = testing::MakeOutcome(p3, {{"a", "b", 0}, {"c", "b", 0}});
  CHECK_THROWS_AS(Earnings(p3, over), Error);
  Outcome bad_split = testing::MakeOutcome(p3, {{"a", "b", 0}});
  bad_split.contracts[0].share_u = 2;
  CHECK_THROWS_AS(ValidateOutcome(p3, bad_split), Error);
  Outcome negative = testing::MakeOutcome(p3, {{"a", "b", -1}});
  CHECK_THROWS_AS(ValidateOutcome(p3, negative), Error);
}

TEST_CASE("characteristic function properties") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    CAPTURE(seed);
    const Instance inst = seed % 2 ? testing::RandomConstrained(seed, 4, 3, 3)
                                   : testing::RandomGeneral(seed, 7);
    const auto table = testing::BruteTable(inst);
    const std::uint64_t full = table.size() - 1;
    CharacteristicFunction v(inst);
    for (std::uint64_t s = 0; s <= full; ++s) {
      CHECK(v(Coalition(s)) == table[s]);
      if (std::popcount(s) <= 1) CHECK(table[s] == 0);
      for (std::uint64_t t = s; t; t = (t - 1) & s) CHECK(table[t] <= table[s]);
      const std::uint64_t rest = full & ~s;
      for (std::uint64_t t = rest; t; t = (t - 1) & rest) CHECK(table[s] + table[t] <= table[s | t]);
    }
  }
}

TEST_CASE("earnings of an outcome sum to its contract weight") {
  const Instance star = testing::Star();
  const Outcome o = testing::MakeOutcome(star, {{"a1", "b", Q(3, 2)}, {"a3", "b", 1}});
  Rational total;
  for (const Rational& x : Earnings(star, o)) total += x;
  CHECK(total == 4);
}

TEST_CASE("coalition bit helpers") {
  const Coalition s = Coalition::Of({0, 2, 5});
  CHECK(s.Size() == 3);
  CHECK(s.Contains(2));
  CHECK_FALSE(s.Contains(1));
  CHECK(s.Members() == std::vector<AgentIndex>{0, 2, 5});
  CHECK(s.Without(2).With(1) == Coalition::Of({0, 1, 5}));
  CHECK(Coalition::Of({0}).SubsetOf(s));
  CHECK(Coalition::Grand(3).bits() == 7);
  CHECK(Coalition::Grand(64).bits() == ~std::uint64_t{0});
}

TEST_CASE("fingerprints are stable and discriminating") {
  CHECK(testing::P3().Fingerprint() == testing::P3().Fingerprint());
  CHECK(testing::SingleEdge(10).Fingerprint() != testing::SingleEdge(9).Fingerprint());
}

}  // namespace
}  // namespace netbargain
