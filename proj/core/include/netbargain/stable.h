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

#ifndef NETBARGAIN_STABLE_H_
#define NETBARGAIN_STABLE_H_

// Stable outcomes: verification, construction from LP dual prices, core
// membership, and realization of core allocations as stable outcomes.
//
// An agent's outside share alpha_v is what it must give up to sign one more
// contract: 0 when it has spare capacity, otherwise its smallest share over
// its current contracts. An outcome is stable when every non-contract edge
// (u, v) satisfies alpha_u + alpha_v >= w_uv. With unit capacities this is
// the familiar x_u + x_v >= w_uv.

#include <optional>
#include <variant>
#include <vector>

#include "netbargain/matching.h"
#include "netbargain/model.h"

namespace netbargain {

struct StabilityViolation {
  EdgeIndex edge;
  Rational slack;  // alpha_u + alpha_v - w_uv < 0
};

struct StabilityReport {
  bool stable = true;
  std::vector<StabilityViolation> violations;
};

// alpha_v for every agent. The outcome must be valid.
std::vector<Rational> OutsideShares(const Instance& inst, const Outcome& outcome);
Rational OutsideShare(const Instance& inst, const Outcome& outcome, AgentIndex v);

// Throws kOutcomeInvariantViolation.
StabilityReport IsStable(const Instance& inst, const Outcome& outcome);

// Returned when the matching LP has a gap: no stable outcome exists.
struct NonexistenceCertificate {
  Rational lp_value;
  Rational ip_value;
  std::vector<Rational> fractional_witness;  // LP optimum, per edge
};

using StableResult = std::variant<Outcome, NonexistenceCertificate>;

// Splits each contract of an optimal integral matching by the LP dual prices:
// the u endpoint receives y_u + z_e and the v endpoint y_v.
StableResult FindStable(const Instance& inst, int edge_limit = kDefaultExactEdgeLimit);

enum class CoreMethod { kAuto, kEnumerate, kStarSeparation };

struct CoreReport {
  bool in_core = false;
  bool efficient = false;
  std::optional<Coalition> witness;  // a coalition of maximum deficiency
  Rational deficiency;               // v(witness) - x(witness)
};

// kAuto enumerates when n <= kEnumerationLimit and otherwise uses star
// separation on ConstrainedBipartite instances; anything else is kTooLarge.
CoreReport CoreMembership(const Instance& inst, const Allocation& x,
                          CoreMethod method = CoreMethod::kAuto);

// Splits x across the contracts of an optimal matching subject to stability,
// via a feasibility LP. Returns nullopt when no such outcome exists.
std::optional<Outcome> RealizeAsStable(const Instance& inst, const Allocation& x,
                                       int edge_limit = kDefaultExactEdgeLimit);

}  // namespace netbargain

#endif  // NETBARGAIN_STABLE_H_
