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


#ifndef NETBARGAIN_GENERATE_H_
#define NETBARGAIN_GENERATE_H_

#include <cstdint>
#include <vector>

#include "netbargain/model.h"

namespace netbargain {

// SplitMix64 (Steele, Lea, Flood 2014): output k is Mix(seed + k * 0x9e3779b97f4a7c15)
// with the standard 30/27/31 xor-shift-multiply finalizer.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t Next();
  // Uniform on [lo, hi] by rejection; lo <= hi.
  std::int64_t Uniform(std::int64_t lo, std::int64_t hi);
  // True with probability p, 0 <= p <= 1, p's denominator below 2^63.
  bool Bernoulli(const Rational& p);

 private:
  std::uint64_t state_;
};

struct GenerateParams {
  Mode mode = Mode::kConstrainedBipartite;
  int num_a = 0;  // bipartite modes
  int num_b = 0;
  int num_agents = 0;  // GeneralUnitCap
  int capacity_min = 1;
  int capacity_max = 1;
  std::int64_t weight_min = 1;
  std::int64_t weight_max = 10;
  Rational density{1};
  std::uint64_t seed = 0;
};

// Agents are "a0".. then "b0".. (or "v0".. in GeneralUnitCap). Capacities are
// drawn before edges; candidate pairs are visited A-major (row-major for
// GeneralUnitCap), each drawing presence and then weight. Throws
// Error(kInvalidParams).
InstanceDescription GenerateDescription(const GenerateParams& params);
Instance Generate(const GenerateParams& params);

// Path v0 - v1 - ... with the given edge weights. In bipartite modes even
// vertices are A and odd vertices B with capacity `b_capacity`.
Instance PathInstance(const std::vector<Rational>& weights, Mode mode = Mode::kGeneralUnitCap,
                      int b_capacity = 1);
// Cycle on weights.size() vertices, GeneralUnitCap.
Instance CycleInstance(const std::vector<Rational>& weights);
// ConstrainedBipartite star: centre "b" with capacity `capacity` and leaves
// "a1", "a2", ... carrying `weights`.
Instance StarInstance(int capacity, const std::vector<Rational>& weights);

}  // namespace netbargain

#endif  // NETBARGAIN_GENERATE_H_
