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


#ifndef NETBARGAIN_ORACLE_H_
#define NETBARGAIN_ORACLE_H_

#include <cstdint>
#include <vector>

#include "netbargain/model.h"

// Reference computations by exhaustive enumeration. Nothing here calls the
// matching, LP or nucleolus solvers.
namespace netbargain::oracle {

inline constexpr int kGameTableLimit = 14;
inline constexpr int kReferenceNucleolusLimit = 12;

struct GameTable {
  std::uint64_t instance_hash = 0;
  int num_agents = 0;
  std::vector<Rational> values;  // indexed by coalition bits

  const Rational& operator()(Coalition s) const { return values[s.bits()]; }
};

// `jobs` > 1 fills each cardinality layer with that many threads.
GameTable BuildGameTable(const Instance& inst, int jobs = 1);

struct CoreLpResult {
  bool empty = false;
  // Core point when nonempty.
  Allocation witness;
  // When empty: weights on coalitions with sum over S containing a of
  // lambda_S equal to 1 for every agent a, and sum lambda_S v(S) > v(N).
  std::vector<std::pair<Coalition, Rational>> certificate;
  Rational min_total;  // minimum of x(N) subject to x(S) >= v(S) for all S
};

CoreLpResult CoreLpFull(const GameTable& table);

Allocation NucleolusReference(const GameTable& table);

}  // namespace netbargain::oracle

#endif  // NETBARGAIN_ORACLE_H_
