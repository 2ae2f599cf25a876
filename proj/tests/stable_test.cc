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
#include "netbargain/matching.h"
#include "netbargain/oracle.h"
#include "netbargain/stable.h"
#include "test_support.h"

namespace netbargain {
namespace {

using testing::Alloc;
using testing::Q;

TEST_CASE("stability of path outcomes") {
  const Instance p3 = testing::P3();
  const StabilityReport ok = IsStable(p3, testing::MakeOutcome(p3, {{"a", "b", 0}}));
  CHECK(ok.stable);
  CHECK(ok.violations.empty());

  const StabilityReport bad = IsStable(p3, testing::MakeOutcome(p3, {{"a", "b", Q(1, 2)}}));
  CHECK_FALSE(bad.stable);
  REQUIRE(bad.violations.size() == 1);
  CHECK(bad.violations[0].edge == *p3.FindEdge(1, 2));
  CHECK(bad.violations[0].slack == Q(-1, 2));

  const Instance edge = testing::SingleEdge();
  for (int split = 0; split <= 10; ++split) {
    CHECK(IsStable(edge, testing::MakeOutcome(edge, {{"v0", "v1", split}})).stable);
  }
}

TEST_CASE("outside shares") {
  const Instance star = testing::Star();
  const Outcome o = testing::MakeOutcome(star, {{"a1", "b", 2}, {"a2", "b", 1}});
  const AgentIndex b = *star.IndexOf("b");
  CHECK(OutsideShare(star, o, b) == 1);
  CHECK(OutsideShare(star, o, *star.IndexOf("a1")) == 2);
  CHECK(OutsideShare(star, o, *star.IndexOf("a3")) == 0);
  const Outcome single = testing::MakeOutcome(star, {{"a1", "b", 2}});
  CHECK(OutsideShare(star, single, b) == 0);
}

TEST_CASE("find stable on fixtures") {
  const StableResult k3 = FindStable(testing::K3());
  REQUIRE(std::holds_alternative<NonexistenceCertificate>(k3));
  const auto& cert = std::get<NonexistenceCertificate>(k3);
  CHECK(cert.lp_value == Q(3, 2));
  CHECK(cert.ip_value == 1);

  const Instance p3 = testing::P3();
  const StableResult p3_result = FindStable(p3);
  REQUIRE(std::holds_alternative<Outcome>(p3_result));
  CHECK(Earnings(p3, std::get<Outcome>(p3_result)) == Alloc({0, 1, 0}));

  const Instance edge = testing::SingleEdge();
  const StableResult e = FindStable(edge);
  REQUIRE(std::holds_alternative<Outcome>(e));
  const Allocation x = Earnings(edge, std::get<Outcome>(e));
  CHECK(x[0] + x[1] == 10);
  CHECK(std::get<Outcome>(e).contracts.size() == 1);
}

TEST_CASE("core membership on fixtures") {
  const Instance p3 = testing::P3();
  CHECK(CoreMembership(p3, Alloc({0, 1, 0})).in_core);
  const CoreReport out = CoreMembership(p3, Alloc({Q(1, 2), Q(1, 2), 0}));
  CHECK_FALSE(out.in_core);
  REQUIRE(out.witness);
  CHECK(*out.witness == Coalition::Of({1, 2}));
  CHECK(out.deficiency == Q(1, 2));

  const Instance star = testing::Star();
  CHECK(CoreMembership(star, Alloc({2, 2, 1, 0})).in_core);
  CHECK(CoreMembership(star, Alloc({2, 2, 1, 0}), CoreMethod::kStarSeparation).in_core);
  const CoreReport inefficient = CoreMembership(star, Alloc({2, 2, 1, 1}));
  CHECK_FALSE(inefficient.efficient);
  CHECK_FALSE(inefficient.in_core);
}

TEST_CASE("star separation agrees with enumeration") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    CAPTURE(seed);
    const Instance inst = testing::RandomConstrained(seed, 5, 3, 3);
    const auto table = testing::BruteTable(inst);
    SplitMix64 rng(seed);
    Allocation x(inst.num_agents());
    Rational left = table.back();
    for (AgentIndex a = 0; a + 1 < inst.num_agents(); ++a) {
      x[a] = Rational(rng.Uniform(-1, 4), 2);
      x[a].canonicalize();
      left -= x[a];
    }
    x.back() = left;
    const CoreReport enumerated = CoreMembership(inst, x, CoreMethod::kEnumerate);
    const CoreReport stars = CoreMembership(inst, x, CoreMethod::kStarSeparation);
    CHECK(enumerated.in_core == testing::BruteInCore(table, x));
    CHECK(stars.in_core == enumerated.in_core);
    CHECK(stars.deficiency == enumerated.deficiency);
  }
}

TEST_CASE("stable outcomes are optimal and lie in the core") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    CAPTURE(seed);
    const Instance inst = seed % 2 ? testing::RandomConstrained(seed, 5, 3, 3)
                                   : testing::RandomGeneral(seed, 7);
    const auto table = testing::BruteTable(inst);
    const StableResult result = FindStable(inst);
    const IntegralityReport gap = ComputeIntegralityReport(inst);
    CHECK(std::holds_alternative<Outcome>(result) == gap.integral);
    if (const auto* o = std::get_if<Outcome>(&result)) {
      CHECK(IsStable(inst, *o).stable);
      const Allocation x = Earnings(inst, *o);
      CHECK(testing::Paid(x, table.size() - 1) == table.back());
      if (inst.mode() == Mode::kConstrainedBipartite) CHECK(testing::BruteInCore(table, x));
    }
  }
}

TEST_CASE("core points are realized as stable outcomes") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    CAPTURE(seed);
    const Instance inst = testing::RandomConstrained(seed, 5, 3, 3);
    const oracle::CoreLpResult core = oracle::CoreLpFull(oracle::BuildGameTable(inst));
    REQUIRE_FALSE(core.empty);
    const auto realized = RealizeAsStable(inst, core.witness);
    REQUIRE(realized);
    CHECK(IsStable(inst, *realized).stable);
    CHECK(Earnings(inst, *realized) == core.witness);
  }
}

TEST_CASE("non-core allocations are not realizable") {
  const Instance p3 = testing::P3();
  CHECK_FALSE(RealizeAsStable(p3, Alloc({Q(1, 2), Q(1, 2), 0})));
  CHECK(RealizeAsStable(p3, Alloc({0, 1, 0})));
}

TEST_CASE("stable in constrained mode implies core for arbitrary splits") {
  int stable_count = 0;
  for (std::uint64_t seed = 1; seed <= 80; ++seed) {
    const Instance inst = testing::RandomConstrained(seed, 4, 3, 3, 4);
    const auto table = testing::BruteTable(inst);
    const ExactMatching m = BmatchingExact(inst, inst.grand());
    SplitMix64 rng(seed * 7 + 1);
    Outcome o;
    for (EdgeIndex e : m.edges) {
      const Rational w = inst.edge(e).weight;
      Rational share = w * Q(static_cast<long>(rng.Uniform(0, 4)), 4);
      o.contracts.push_back({e, share, w - share});
    }
    if (!IsStable(inst, o).stable) continue;
    ++stable_count;
    CHECK(testing::BruteInCore(table, Earnings(inst, o)));
  }
  CHECK(stable_count > 5);
}

}  // namespace
}  // namespace netbargain
