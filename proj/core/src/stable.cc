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

#include "netbargain/stable.h"

#include <algorithm>

#include "excess_search.h"
#include "netbargain/error.h"
#include "netbargain/lp.h"

namespace netbargain {
namespace {

std::vector<int> Degrees(const Instance& inst, const Outcome& outcome) {
  std::vector<int> degree(inst.num_agents(), 0);
  for (const Contract& c : outcome.contracts) {
    ++degree[inst.edge(c.edge).u];
    ++degree[inst.edge(c.edge).v];
  }
  return degree;
}

void CheckAllocationSize(const Instance& inst, const Allocation& x) {
  if (static_cast<int>(x.size()) != inst.num_agents()) {
    throw Error(ErrorCode::kInvalidParams, "allocation has " + std::to_string(x.size()) +
                                               " entries for " +
                                               std::to_string(inst.num_agents()) + " agents");
  }
}

}  // namespace

std::vector<Rational> OutsideShares(const Instance& inst, const Outcome& outcome) {
  const std::vector<int> degree = Degrees(inst, outcome);
  std::vector<std::optional<Rational>> smallest(inst.num_agents());
  for (const Contract& c : outcome.contracts) {
    const Edge& e = inst.edge(c.edge);
    for (AgentIndex a : {e.u, e.v}) {
      const Rational& share = c.ShareOf(e, a);
      if (!smallest[a] || share < *smallest[a]) smallest[a] = share;
    }
  }
  std::vector<Rational> alpha(inst.num_agents());
  for (AgentIndex a = 0; a < inst.num_agents(); ++a) {
    if (degree[a] >= inst.capacity(a) && smallest[a]) alpha[a] = *smallest[a];
  }
  return alpha;
}

Rational OutsideShare(const Instance& inst, const Outcome& outcome, AgentIndex v) {
  return OutsideShares(inst, outcome)[v];
}

StabilityReport IsStable(const Instance& inst, const Outcome& outcome) {
  ValidateOutcome(inst, outcome);
  const std::vector<Rational> alpha = OutsideShares(inst, outcome);
  StabilityReport report;
  for (EdgeIndex e = 0; e < inst.num_edges(); ++e) {
    if (outcome.Find(e) != nullptr) continue;
    const Edge& edge = inst.edge(e);
    Rational slack = alpha[edge.u] + alpha[edge.v] - edge.weight;
    if (sgn(slack) < 0) report.violations.push_back({e, std::move(slack)});
  }
  report.stable = report.violations.empty();
  return report;
}

StableResult FindStable(const Instance& inst, int edge_limit) {
  const IntegralityReport report = ComputeIntegralityReport(inst, edge_limit);
  if (!report.integral) {
    return NonexistenceCertificate{report.lp_value, report.ip_value, report.lp_primal};
  }
  Outcome outcome;
  for (EdgeIndex e : report.ip_matching) {
    const Edge& edge = inst.edge(e);
    Contract c{e, report.y[edge.u] + report.z[e], report.y[edge.v]};
    if (c.share_u + c.share_v != edge.weight) {
      throw Error(ErrorCode::kInternal, "dual prices are not tight on a matching edge");
    }
    outcome.contracts.push_back(std::move(c));
  }
  return outcome;
}

CoreReport CoreMembership(const Instance& inst, const Allocation& x, CoreMethod method) {
  CheckAllocationSize(inst, x);
  if (method == CoreMethod::kAuto) {
    if (inst.num_agents() <= kEnumerationLimit) {
      method = CoreMethod::kEnumerate;
    } else if (inst.mode() == Mode::kConstrainedBipartite) {
      method = CoreMethod::kStarSeparation;
    } else {
      throw Error(ErrorCode::kTooLarge, "core check needs enumeration or ConstrainedBipartite");
    }
  }

  CoreReport report;
  const Coalition grand = inst.grand();
  const Rational grand_value = CoalitionValue(inst, grand);
  const Rational total = Sum(x, grand);
  report.efficient = total == grand_value;
  if (!report.efficient) {
    report.witness = grand;
    report.deficiency = grand_value - total;
    return report;
  }

  std::optional<internal::ExcessWitness> worst;
  if (method == CoreMethod::kEnumerate) {
    CharacteristicFunction v(inst);
    worst = internal::ExcessTable(v, x).Max(Coalition(), Coalition());
  } else {
    worst = internal::MaxExcessStars(inst, x, Coalition(), Coalition());
  }
  report.in_core = !worst || sgn(worst->excess) <= 0;
  if (!report.in_core) {
    report.witness = worst->coalition;
    report.deficiency = worst->excess;
  }
  return report;
}

std::optional<Outcome> RealizeAsStable(const Instance& inst, const Allocation& x,
                                       int edge_limit) {
  CheckAllocationSize(inst, x);
  const IntegralityReport matching = ComputeIntegralityReport(inst, edge_limit);
  const std::vector<EdgeIndex>& contracts = matching.ip_matching;

  lp::LinearProgram program;
  std::vector<int> var_u(contracts.size()), var_v(contracts.size());
  std::vector<std::vector<std::pair<int, EdgeIndex>>> shares_of(inst.num_agents());
  for (size_t k = 0; k < contracts.size(); ++k) {
    const Edge& e = inst.edge(contracts[k]);
    var_u[k] = program.AddVariable("z_u_" + std::to_string(contracts[k]));
    var_v[k] = program.AddVariable("z_v_" + std::to_string(contracts[k]));
    program.AddConstraint({{var_u[k], 1}, {var_v[k], 1}}, lp::Relation::kEqual, e.weight);
    shares_of[e.u].emplace_back(var_u[k], contracts[k]);
    shares_of[e.v].emplace_back(var_v[k], contracts[k]);
  }
  for (AgentIndex a = 0; a < inst.num_agents(); ++a) {
    lp::LinearExpr row;
    for (const auto& [var, e] : shares_of[a]) row.push_back({var, 1});
    program.AddConstraint(std::move(row), lp::Relation::kEqual, x[a]);
  }
  auto saturated = [&](AgentIndex a) {
    return static_cast<int>(shares_of[a].size()) >= inst.capacity(a);
  };
  for (EdgeIndex e = 0; e < inst.num_edges(); ++e) {
    if (std::binary_search(contracts.begin(), contracts.end(), e)) continue;
    const Edge& edge = inst.edge(e);
    const bool su = saturated(edge.u);
    const bool sv = saturated(edge.v);
    if (!su && !sv) {
      if (sgn(edge.weight) > 0) return std::nullopt;
      continue;
    }
    if (su && sv) {
      for (const auto& [zu, eu] : shares_of[edge.u]) {
        for (const auto& [zv, ev] : shares_of[edge.v]) {
          program.AddConstraint({{zu, 1}, {zv, 1}}, lp::Relation::kGreaterEqual, edge.weight);
        }
      }
    } else {
      for (const auto& [z, other] : shares_of[su ? edge.u : edge.v]) {
        program.AddConstraint({{z, 1}}, lp::Relation::kGreaterEqual, edge.weight);
      }
    }
  }
  program.SetObjective(lp::Sense::kMaximize, {});
  const lp::Solution sol = lp::Solve(program);
  if (sol.status != lp::Status::kOptimal) return std::nullopt;

  Outcome outcome;
  for (size_t k = 0; k < contracts.size(); ++k) {
    outcome.contracts.push_back({contracts[k], sol.primal[var_u[k]], sol.primal[var_v[k]]});
  }
  return outcome;
}

}  // namespace netbargain
