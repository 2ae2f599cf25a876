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

#ifndef NETBARGAIN_BALANCED_H_
#define NETBARGAIN_BALANCED_H_

// Balanced outcomes and the prekernel.
//
// For a contract e = (u, v) of a stable outcome, each endpoint's net surplus
// is its share minus its outside option beta. The outcome is balanced when
// the two net surpluses agree on every contract. The balancing dynamics
// repeatedly moves half of the largest imbalance across its contract, in the
// manner of a Stearns transfer scheme.

#include <optional>
#include <utility>
#include <vector>

#include "netbargain/model.h"

namespace netbargain {

// beta_v = max(0, max over non-contract edges (v, u) of w_vu - alpha_u).
// Throws kNotAContractEdge when `contract` is not in the outcome or does not
// touch v.
Rational OutsideOption(const Instance& inst, const Outcome& outcome, AgentIndex v,
                       EdgeIndex contract);

struct EdgeImbalance {
  EdgeIndex edge;
  Rational imbalance;  // (z_{e,u} - beta_u) - (z_{e,v} - beta_v)
};

struct BalanceReport {
  Rational epsilon;  // max |imbalance|
  std::optional<EdgeIndex> worst_edge;
  std::vector<EdgeImbalance> per_edge;
  bool balanced = true;  // epsilon <= tol
};

// Throws kNotStable when the outcome is not stable.
BalanceReport IsBalanced(const Instance& inst, const Outcome& outcome, const Rational& tol);

enum class Schedule { kMaxImbalance, kRoundRobin };

struct DynamicsOptions {
  Rational tol{1, 1000000000};
  int max_rounds = 10000;
  Schedule schedule = Schedule::kMaxImbalance;
};

struct TransferRecord {
  int round;
  EdgeIndex edge;
  AgentIndex from;
  AgentIndex to;
  Rational amount;
  Rational epsilon;  // after the transfer
};

struct DynamicsResult {
  Outcome outcome;
  Rational initial_epsilon;
  std::vector<TransferRecord> trace;
  bool converged = false;  // false is the NoConvergence report
};

// Requires a stable start on a GeneralUnitCap or ConstrainedBipartite
// instance (kNotStable / kWrongMode). Stability is re-verified after every
// transfer.
DynamicsResult BalanceDynamics(const Instance& inst, const Outcome& start,
                               const DynamicsOptions& options = {});

enum class SurplusMethod { kAuto, kEnumerate, kStarDecomposition };

struct SurplusValue {
  AgentIndex i;
  AgentIndex j;
  Rational value;  // max over S with i in S, j not in S of v(S) - x(S)
  Coalition witness;
};

SurplusValue PrekernelSurplus(const Instance& inst, const Allocation& x, AgentIndex i,
                              AgentIndex j, SurplusMethod method = SurplusMethod::kAuto);

struct PrekernelReport {
  bool in_prekernel = true;
  std::optional<std::pair<AgentIndex, AgentIndex>> worst_pair;  // s_ij >= s_ji
  Rational worst_gap;
};

// Throws kNotEfficient when x(N) != v(N).
PrekernelReport IsPrekernel(const Instance& inst, const Allocation& x, const Rational& tol,
                            SurplusMethod method = SurplusMethod::kAuto);

}  // namespace netbargain

#endif  // NETBARGAIN_BALANCED_H_
