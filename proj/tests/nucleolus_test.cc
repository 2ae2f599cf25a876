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
#include "netbargain/nucleolus.h"
#include "netbargain/oracle.h"
#include "netbargain/stable.h"
#include "test_support.h"

namespace netbargain {
namespace {

using testing::Alloc;
using testing::Q;

TEST_CASE("brute-force nucleolus on fixtures") {
  CHECK(NucleolusBruteforce(testing::SingleEdge()) == Alloc({5, 5}));
  CHECK(NucleolusBruteforce(testing::P3()) == Alloc({0, 1, 0}));
  CHECK(NucleolusBruteforce(testing::P4()) == Alloc({Q(1, 3), Q(2, 3), Q(2, 3), Q(1, 3)}));
  CHECK(NucleolusBruteforce(testing::K3()) == Alloc({Q(1, 3), Q(1, 3), Q(1, 3)}));
}

TEST_CASE("pruned nucleolus on fixtures") {
  const Instance star = testing::Star();
  const NucleolusResult pruned = NucleolusPruned(star);
  CHECK(pruned.allocation == NucleolusBruteforce(star));
  CHECK(pruned.allocation == Alloc({Q(7, 2), 1, Q(1, 2), 0}));
  CHECK(NucleolusPruned(testing::P3()).allocation == Alloc({0, 1, 0}));

  InstanceDescription pair;
  pair.mode = Mode::kConstrainedBipartite;
  pair.agents = {{"a", Side::kA, 1}, {"b", Side::kB, 3}};
  pair.edges = {{"a", "b", 8}};
  CHECK(NucleolusPruned(Instance::Build(pair)).allocation == Alloc({4, 4}));
}

TEST_CASE("degenerate sizes") {
  InstanceDescription empty;
  empty.mode = Mode::kConstrainedBipartite;
  CHECK(NucleolusPruned(Instance::Build(empty)).allocation.empty());
  empty.agents = {{"a", Side::kA, 1}};
  CHECK(NucleolusPruned(Instance::Build(empty)).allocation == Alloc({0}));
  empty.agents.push_back({"b", Side::kB, 1});
  CHECK(NucleolusBruteforce(Instance::Build(empty)) == Alloc({0, 0}));
}

TEST_CASE("preconditions") {
  CHECK_THROWS_AS(NucleolusPruned(testing::P4()), Error);
  GenerateParams p;
  p.mode = Mode::kGeneralUnitCap;
  p.num_agents = 13;
  p.density = 0;
  CHECK_THROWS_AS(NucleolusBruteforce(Generate(p)), Error);
}

TEST_CASE("levels strictly increase and pin the allocation") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    CAPTURE(seed);
    const Instance inst = testing::RandomConstrained(seed, 6, 3, 3);
    const NucleolusResult r = NucleolusPruned(inst);
    for (size_t k = 1; k < r.levels.size(); ++k) CHECK(r.levels[k - 1].epsilon < r.levels[k].epsilon);
    for (const Level& level : r.levels) {
      CHECK_FALSE(level.fixed.empty());
      for (Coalition s : level.fixed) {
        CHECK(Sum(r.allocation, s) - CoalitionValue(inst, s) == level.epsilon);
      }
    }
  }
}

TEST_CASE("pruned, brute-force and reference nucleoli coincide") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    CAPTURE(seed);
    const Instance inst = testing::RandomConstrained(seed, 6, 3, 3);
    const Allocation pruned = NucleolusPruned(inst).allocation;
    CHECK(pruned == NucleolusBruteforce(inst));
    CHECK(pruned == oracle::NucleolusReference(oracle::BuildGameTable(inst)));
  }
}

TEST_CASE("general-mode nucleolus matches the reference") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    CAPTURE(seed);
    const Instance inst = testing::RandomGeneral(seed, 7);
    CHECK(NucleolusBruteforce(inst) == oracle::NucleolusReference(oracle::BuildGameTable(inst)));
  }
}

TEST_CASE("nucleolus is an imputation in the core") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const Instance inst = testing::RandomConstrained(seed, 6, 4, 3);
    const Allocation x = NucleolusPruned(inst).allocation;
    for (const Rational& value : x) CHECK(value >= 0);
    CHECK(Sum(x, inst.grand()) == CoalitionValue(inst, inst.grand()));
    CHECK(CoreMembership(inst, x).in_core);
  }
}

TEST_CASE("nucleolus is lexicographically optimal among nearby allocations") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const Instance inst = testing::RandomConstrained(seed, 5, 3, 3);
    const Allocation x = NucleolusPruned(inst).allocation;
    const auto table = testing::BruteTable(inst);
    const auto base = testing::BruteExcesses(table, x);
    SplitMix64 rng(seed);
    for (int trial = 0; trial < 40; ++trial) {
      Allocation y = x;
      const int i = static_cast<int>(rng.Uniform(0, inst.num_agents() - 1));
      const int j = static_cast<int>(rng.Uniform(0, inst.num_agents() - 1));
      if (i == j) continue;
      const Rational delta = Q(static_cast<long>(rng.Uniform(1, 8)), 16);
      y[i] += delta;
      y[j] -= delta;
      const auto other = testing::BruteExcesses(table, y);
      CHECK(LexCompare(base, other) == Ordering::kLess);
      CHECK(LexCompare(ExcessProfile(inst, x), ExcessProfile(inst, y)) == Ordering::kLess);
    }
  }
}

TEST_CASE("symmetric agents earn the same") {
  InstanceDescription d;
  d.mode = Mode::kConstrainedBipartite;
  d.agents = {{"a1", Side::kA, 1}, {"a2", Side::kA, 1}, {"a3", Side::kA, 1},
              {"b1", Side::kB, 2}, {"b2", Side::kB, 1}};
  d.edges = {{"a1", "b1", 4}, {"a2", "b1", 4}, {"a1", "b2", 3}, {"a2", "b2", 3}, {"a3", "b1", 2}};
  const Instance inst = Instance::Build(d);
  const Allocation x = NucleolusPruned(inst).allocation;
  CHECK(x[0] == x[1]);
}

TEST_CASE("excess profiles") {
  const Instance p3 = testing::P3();
  const auto profile = ExcessProfile(p3, Alloc({0, 1, 0}));
  REQUIRE(profile.size() == 6);
  CHECK(profile[0].excess == 0);
  CHECK(profile.back().excess == -1);
  CHECK(profile.back().coalition == Coalition::Of({1}));
  int zero = 0;
  for (const auto& r : profile) zero += r.excess == 0;
  CHECK(zero == 5);

  const Instance edge = testing::SingleEdge();
  const auto two = ExcessProfile(edge, Alloc({5, 5}));
  REQUIRE(two.size() == 2);
  CHECK(two[0].excess == -5);
  CHECK(two[0].coalition == Coalition::Of({0}));
  CHECK(two[1].coalition == Coalition::Of({1}));

  const Coalition grand = p3.grand();
  const auto only = ExcessProfile(p3, Alloc({0, 1, 0}), std::span<const Coalition>(&grand, 1));
  REQUIRE(only.size() == 1);
  CHECK(only[0].excess == 0);
}

TEST_CASE("lexicographic comparison") {
  const std::vector<Rational> a{0, 0, -1};
  const std::vector<Rational> b{Q(1, 2), Q(-1, 2), -1};
  CHECK(LexCompare(a, b) == Ordering::kLess);
  CHECK(LexCompare(a, a) == Ordering::kEqual);
  CHECK(LexCompare(std::vector<Rational>{0, -1}, std::vector<Rational>{0, -2}) == Ordering::kGreater);
  CHECK_THROWS_AS(LexCompare(std::vector<Rational>{0}, std::vector<Rational>{0, 1}), Error);
}

}  // namespace
}  // namespace netbargain
