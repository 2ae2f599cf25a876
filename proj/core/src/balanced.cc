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

#include "netbargain/balanced.h"

#include <algorithm>

#include "excess_search.h"
#include "netbargain/error.h"
#include "netbargain/stable.h"

namespace netbargain {
namespace {

// Outside options of every agent; independent of which contract is asked
// about.
std::vector<Rational> OutsideOptions(const Instance& inst, const Outcome& outcome) {
  const std::vector<Rational> alpha = OutsideShares(inst, outcome);
  std::vector<Rational> beta(inst.num_agents());
  for (EdgeIndex e = 0; e < inst.num_edges(); ++e) {
    if (outcome.Find(e) != nullptr) continue;
    const Edge& edge = inst.edge(e);
    for (AgentIndex a : {edge.u, edge.v}) {
      const Rational option = edge.weight - alpha[edge.Other(a)];
      if (option > beta[a]) beta[a] = option;
    }
  }
  return beta;
}

BalanceReport Imbalances(const Instance& inst, const Outcome& outcome, const Rational& tol) {
  const std::vector<Rational> beta = OutsideOptions(inst, outcome);
  BalanceReport report;
  for (const Contract& c : outcome.contracts) {
    const Edge& e = inst.edge(c.edge);
    Rational imbalance = (c.share_u - beta[e.u]) - (c.share_v - beta[e.v]);
    const Rational magnitude = Abs(imbalance);
    if (!report.worst_edge || magnitude > report.epsilon) {
      report.epsilon = magnitude;
      report.worst_edge = c.edge;
    }
    report.per_edge.push_back({c.edge, std::move(imbalance)});
  }
  report.balanced = report.epsilon <= tol;
  return report;
}

void RequireStable(const Instance& inst, const Outcome& outcome) {
  const StabilityReport stability = IsStable(inst, outcome);
  if (!stability.stable) {
    const Edge& e = inst.edge(stability.violations.front().edge);
    throw Error(ErrorCode::kNotStable, "outcome is not stable at edge (" + inst.id(e.u) + ", " +
                                           inst.id(e.v) + ")");
  }
}

}  // namespace

Rational OutsideOption(const Instance& inst, const Outcome& outcome, AgentIndex v,
                       EdgeIndex contract) {
  ValidateOutcome(inst, outcome);
  if (outcome.Find(contract) == nullptr || !inst.edge(contract).Touches(v)) {
    throw Error(ErrorCode::kNotAContractEdge,
                "edge " + std::to_string(contract) + " is not a contract of agent '" +
                    inst.id(v) + "'");
  }
  return OutsideOptions(inst, outcome)[v];
}

BalanceReport IsBalanced(const Instance& inst, const Outcome& outcome, const Rational& tol) {
  RequireStable(inst, outcome);
  return Imbalances(inst, outcome, tol);
}

DynamicsResult BalanceDynamics(const Instance& inst, const Outcome& start,
                               const DynamicsOptions& options) {
  if (inst.mode() == Mode::kBipartiteCap) {
    throw Error(ErrorCode::kWrongMode,
                "balancing dynamics runs on GeneralUnitCap or ConstrainedBipartite instances");
  }
  RequireStable(inst, start);

  DynamicsResult result;
  result.outcome = start;
  Outcome& outcome = result.outcome;
  BalanceReport report = Imbalances(inst, outcome, options.tol);
  result.initial_epsilon = report.epsilon;
  size_t cursor = 0;

  for (int round = 1; !report.balanced && round <= options.max_rounds; ++round) {
    size_t pick = 0;
    if (options.schedule == Schedule::kMaxImbalance) {
      while (outcome.contracts[pick].edge != *report.worst_edge) ++pick;
    } else {
      const size_t m = outcome.contracts.size();
      for (size_t step = 0; step < m; ++step) {
        const size_t k = (cursor + step) % m;
        if (Abs(report.per_edge[k].imbalance) > options.tol) {
          pick = k;
          break;
        }
      }
      cursor = (pick + 1) % m;
    }

    Contract& contract = outcome.contracts[pick];
    const Edge& e = inst.edge(contract.edge);
    const Rational& imbalance = report.per_edge[pick].imbalance;
    const bool u_gives = sgn(imbalance) > 0;
    const AgentIndex from = u_gives ? e.u : e.v;
    Rational& giver = u_gives ? contract.share_u : contract.share_v;
    Rational& taker = u_gives ? contract.share_v : contract.share_u;

    // Largest step keeping the giver's share nonnegative and, when it is
    // saturated, its outside share above every competing offer.
    Rational amount = Abs(imbalance) / 2;
    int degree = 0;
    for (const Contract& c : outcome.contracts) {
      if (inst.edge(c.edge).Touches(from)) ++degree;
    }
    Rational limit = giver;
    if (degree >= inst.capacity(from)) {
      limit -= OutsideOptions(inst, outcome)[from];
    }
    if (amount > limit) amount = limit;
    if (sgn(amount) < 0) amount = 0;

    giver -= amount;
    taker += amount;
    RequireStable(inst, outcome);
    report = Imbalances(inst, outcome, options.tol);
    result.trace.push_back({round, contract.edge, from, e.Other(from), amount, report.epsilon});
  }
  result.converged = report.balanced;
  return result;
}

SurplusValue PrekernelSurplus(const Instance& inst, const Allocation& x, AgentIndex i,
                              AgentIndex j, SurplusMethod method) {
  if (i == j || i < 0 || j < 0 || i >= inst.num_agents() || j >= inst.num_agents()) {
    throw Error(ErrorCode::kInvalidParams, "surplus needs two distinct agents");
  }
  if (method == SurplusMethod::kAuto) {
    if (inst.num_agents() <= kEnumerationLimit) {
      method = SurplusMethod::kEnumerate;
    } else if (inst.mode() == Mode::kConstrainedBipartite) {
      method = SurplusMethod::kStarDecomposition;
    } else {
      throw Error(ErrorCode::kTooLarge, "surplus needs enumeration or ConstrainedBipartite");
    }
  }
  std::optional<internal::ExcessWitness> best;
  if (method == SurplusMethod::kEnumerate) {
    CharacteristicFunction v(inst);
    best = internal::ExcessTable(v, x).Max(Coalition::Singleton(i), Coalition::Singleton(j));
  } else {
    best = internal::MaxExcessStars(inst, x, Coalition::Singleton(i), Coalition::Singleton(j));
  }
  return {i, j, best->excess, best->coalition};
}

PrekernelReport IsPrekernel(const Instance& inst, const Allocation& x, const Rational& tol,
                            SurplusMethod method) {
  if (static_cast<int>(x.size()) != inst.num_agents()) {
    throw Error(ErrorCode::kInvalidParams, "allocation size does not match the instance");
  }
  const int n = inst.num_agents();
  if (Sum(x, inst.grand()) != CoalitionValue(inst, inst.grand())) {
    throw Error(ErrorCode::kNotEfficient, "x(N) differs from v(N)");
  }
  if (method == SurplusMethod::kAuto) {
    method = n <= kEnumerationLimit ? SurplusMethod::kEnumerate
                                    : SurplusMethod::kStarDecomposition;
  }

  std::vector<Rational> surplus(static_cast<size_t>(n) * n);
  if (method == SurplusMethod::kEnumerate) {
    CharacteristicFunction v(inst);
    const internal::ExcessTable table(v, x);
    for (AgentIndex i = 0; i < n; ++i) {
      for (AgentIndex j = 0; j < n; ++j) {
        if (i != j) {
          surplus[i * n + j] =
              table.Max(Coalition::Singleton(i), Coalition::Singleton(j))->excess;
        }
      }
    }
  } else {
    for (AgentIndex i = 0; i < n; ++i) {
      for (AgentIndex j = 0; j < n; ++j) {
        if (i != j) surplus[i * n + j] = PrekernelSurplus(inst, x, i, j, method).value;
      }
    }
  }

  PrekernelReport report;
  for (AgentIndex i = 0; i < n; ++i) {
    for (AgentIndex j = i + 1; j < n; ++j) {
      const Rational gap = Abs(surplus[i * n + j] - surplus[j * n + i]);
      if (!report.worst_pair || gap > report.worst_gap) {
        report.worst_gap = gap;
        report.worst_pair = surplus[i * n + j] >= surplus[j * n + i] ? std::pair{i, j}
                                                                      : std::pair{j, i};
      }
    }
  }
  report.in_prekernel = report.worst_gap <= tol;
  return report;
}

}  // namespace netbargain
