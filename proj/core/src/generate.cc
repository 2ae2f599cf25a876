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


#include "netbargain/generate.h"

#include <limits>

#include "netbargain/error.h"

namespace netbargain {

std::uint64_t SplitMix64::Next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::int64_t SplitMix64::Uniform(std::int64_t lo, std::int64_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
  if (span == std::numeric_limits<std::uint64_t>::max()) return static_cast<std::int64_t>(Next());
  const std::uint64_t range = span + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t draw;
  do {
    draw = Next();
  } while (draw >= limit);
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + draw % range);
}

bool SplitMix64::Bernoulli(const Rational& p) {
  if (sgn(p) <= 0) return false;
  if (p >= 1) return true;
  const std::int64_t den = p.get_den().get_si();
  const std::int64_t num = p.get_num().get_si();
  return Uniform(0, den - 1) < num;
}

namespace {

void Check(bool ok, const std::string& message) {
  if (!ok) throw Error(ErrorCode::kInvalidParams, message);
}

}  // namespace

InstanceDescription GenerateDescription(const GenerateParams& p) {
  Check(p.weight_min >= 0 && p.weight_min <= p.weight_max, "weight range must satisfy 0 <= min <= max");
  Check(p.capacity_min >= 1 && p.capacity_min <= p.capacity_max,
        "capacity range must satisfy 1 <= min <= max");
  Check(sgn(p.density) >= 0 && p.density <= 1, "density must lie in [0, 1]");
  Check(mpz_sizeinbase(p.density.get_den().get_mpz_t(), 2) < 63, "density denominator too large");

  SplitMix64 rng(p.seed);
  InstanceDescription d;
  d.mode = p.mode;
  auto weight = [&] { return Rational(static_cast<long>(rng.Uniform(p.weight_min, p.weight_max))); };

  if (p.mode == Mode::kGeneralUnitCap) {
    Check(p.num_agents >= 0 && p.num_agents <= kMaxAgents, "agent count out of range");
    for (int i = 0; i < p.num_agents; ++i) d.agents.push_back({"v" + std::to_string(i), Side::kNone, 1});
    for (int i = 0; i < p.num_agents; ++i) {
      for (int j = i + 1; j < p.num_agents; ++j) {
        if (rng.Bernoulli(p.density)) d.edges.push_back({d.agents[i].id, d.agents[j].id, weight()});
      }
    }
    return d;
  }

  Check(p.num_a >= 0 && p.num_b >= 0 && p.num_a + p.num_b <= kMaxAgents, "side sizes out of range");
  for (int i = 0; i < p.num_a; ++i) {
    const int capacity = p.mode == Mode::kConstrainedBipartite
                             ? 1
                             : static_cast<int>(rng.Uniform(p.capacity_min, p.capacity_max));
    d.agents.push_back({"a" + std::to_string(i), Side::kA, capacity});
  }
  for (int i = 0; i < p.num_b; ++i) {
    d.agents.push_back({"b" + std::to_string(i), Side::kB,
                        static_cast<int>(rng.Uniform(p.capacity_min, p.capacity_max))});
  }
  for (int i = 0; i < p.num_a; ++i) {
    for (int j = 0; j < p.num_b; ++j) {
      if (rng.Bernoulli(p.density)) {
        d.edges.push_back({d.agents[i].id, d.agents[p.num_a + j].id, weight()});
      }
    }
  }
  return d;
}

Instance Generate(const GenerateParams& params) { return Instance::Build(GenerateDescription(params)); }

Instance PathInstance(const std::vector<Rational>& weights, Mode mode, int b_capacity) {
  InstanceDescription d;
  d.mode = mode;
  const int n = weights.empty() ? 0 : static_cast<int>(weights.size()) + 1;
  for (int i = 0; i < n; ++i) {
    AgentSpec spec{"v" + std::to_string(i), Side::kNone, 1};
    if (mode != Mode::kGeneralUnitCap) {
      spec.side = i % 2 == 0 ? Side::kA : Side::kB;
      if (spec.side == Side::kB) spec.capacity = b_capacity;
    }
    d.agents.push_back(spec);
  }
  for (size_t i = 0; i < weights.size(); ++i) {
    d.edges.push_back({d.agents[i].id, d.agents[i + 1].id, weights[i]});
  }
  return Instance::Build(d);
}

Instance CycleInstance(const std::vector<Rational>& weights) {
  const int n = static_cast<int>(weights.size());
  Check(n >= 3, "a cycle needs at least three vertices");
  InstanceDescription d;
  d.mode = Mode::kGeneralUnitCap;
  for (int i = 0; i < n; ++i) d.agents.push_back({"v" + std::to_string(i), Side::kNone, 1});
  for (int i = 0; i < n; ++i) d.edges.push_back({d.agents[i].id, d.agents[(i + 1) % n].id, weights[i]});
  return Instance::Build(d);
}

Instance StarInstance(int capacity, const std::vector<Rational>& weights) {
  InstanceDescription d;
  d.mode = Mode::kConstrainedBipartite;
  d.agents.push_back({"b", Side::kB, capacity});
  for (size_t i = 0; i < weights.size(); ++i) {
    const std::string id = "a" + std::to_string(i + 1);
    d.agents.push_back({id, Side::kA, 1});
    d.edges.push_back({"b", id, weights[i]});
  }
  return Instance::Build(d);
}

}  // namespace netbargain
