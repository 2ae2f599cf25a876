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

#include "netbargain/matching.h"

#include <algorithm>

#include "netbargain/error.h"
#include "netbargain/lp.h"

namespace netbargain {

LpRelaxation BmatchingLp(const Instance& inst, Coalition s) {
  const auto edges = inst.EdgesWithin(s);
  const auto members = s.Members();

  lp::LinearProgram program;
  std::vector<int> var(inst.num_edges(), -1);
  lp::LinearExpr objective;
  for (EdgeIndex e : edges) {
    var[e] = program.AddVariable("chi_" + std::to_string(e));
    objective.push_back({var[e], inst.edge(e).weight});
  }
  program.SetObjective(lp::Sense::kMaximize, std::move(objective));

  std::vector<int> capacity_row(inst.num_agents(), -1);
  for (AgentIndex v : members) {
    lp::LinearExpr row;
    for (EdgeIndex e : inst.incident(v)) {
      if (var[e] >= 0) row.push_back({var[e], 1});
    }
    capacity_row[v] = program.AddConstraint(std::move(row), lp::Relation::kLessEqual,
                                            inst.capacity(v));
  }
  std::vector<int> unit_row(inst.num_edges(), -1);
  for (EdgeIndex e : edges) {
    unit_row[e] = program.AddConstraint({{var[e], 1}}, lp::Relation::kLessEqual, 1);
  }

  const lp::Solution sol = lp::Solve(program);
  if (sol.status != lp::Status::kOptimal) {
    throw Error(ErrorCode::kInternal, "b-matching LP is bounded and feasible by construction");
  }
  LpRelaxation out;
  out.value = sol.objective_value;
  out.primal.assign(inst.num_edges(), Rational(0));
  out.z.assign(inst.num_edges(), Rational(0));
  out.y.assign(inst.num_agents(), Rational(0));
  for (EdgeIndex e : edges) {
    out.primal[e] = sol.primal[var[e]];
    out.z[e] = sol.dual[unit_row[e]];
  }
  for (AgentIndex v : members) out.y[v] = sol.dual[capacity_row[v]];
  return out;
}

namespace {

// Visits b-matchings in lexicographic order of their ascending edge
// sequences, so the first matching reaching the best value is the
// lexicographically smallest optimum.
class ExactSearch {
 public:
  ExactSearch(const Instance& inst, std::vector<EdgeIndex> edges)
      : inst_(inst), edges_(std::move(edges)), residual_(inst.num_agents()) {
    for (AgentIndex v = 0; v < inst.num_agents(); ++v) residual_[v] = inst.capacity(v);
  }

  ExactMatching Run() {
    best_value_ = 0;
    best_.clear();
    Visit(0, Rational(0));
    return {best_value_, best_};
  }

 private:
  void Visit(size_t next, const Rational& value) {
    if (value > best_value_) {
      best_value_ = value;
      best_ = chosen_;
    }
    Rational bound = value;
    for (size_t k = next; k < edges_.size(); ++k) {
      const Edge& e = inst_.edge(edges_[k]);
      if (residual_[e.u] > 0 && residual_[e.v] > 0) bound += e.weight;
    }
    if (bound <= best_value_) return;
    for (size_t k = next; k < edges_.size(); ++k) {
      const Edge& e = inst_.edge(edges_[k]);
      if (residual_[e.u] == 0 || residual_[e.v] == 0) continue;
      --residual_[e.u];
      --residual_[e.v];
      chosen_.push_back(edges_[k]);
      Visit(k + 1, value + e.weight);
      chosen_.pop_back();
      ++residual_[e.u];
      ++residual_[e.v];
    }
  }

  const Instance& inst_;
  std::vector<EdgeIndex> edges_;
  std::vector<int> residual_;
  std::vector<EdgeIndex> chosen_;
  std::vector<EdgeIndex> best_;
  Rational best_value_;
};

}  // namespace

ExactMatching BmatchingExact(const Instance& inst, Coalition s, int edge_limit) {
  auto edges = inst.EdgesWithin(s);
  if (static_cast<int>(edges.size()) > edge_limit) {
    throw Error(ErrorCode::kTooLarge, std::to_string(edges.size()) +
                                          " edges exceed the exact search limit of " +
                                          std::to_string(edge_limit));
  }
  return ExactSearch(inst, std::move(edges)).Run();
}

IntegralityReport ComputeIntegralityReport(const Instance& inst, int edge_limit) {
  const Coalition grand = inst.grand();
  LpRelaxation relaxation = BmatchingLp(inst, grand);
  IntegralityReport report;
  report.lp_value = relaxation.value;
  report.lp_primal = std::move(relaxation.primal);
  report.y = std::move(relaxation.y);
  report.z = std::move(relaxation.z);

  if (inst.num_edges() <= edge_limit) {
    ExactMatching exact = BmatchingExact(inst, grand, edge_limit);
    report.ip_value = exact.value;
    report.ip_matching = std::move(exact.edges);
  } else {
    const bool vertex_integral =
        std::all_of(report.lp_primal.begin(), report.lp_primal.end(),
                    [](const Rational& chi) { return chi == 0 || chi == 1; });
    if (!vertex_integral) {
      throw Error(ErrorCode::kTooLarge,
                  "fractional LP vertex and too many edges for the exact search");
    }
    report.ip_value = report.lp_value;
    for (EdgeIndex e = 0; e < inst.num_edges(); ++e) {
      if (report.lp_primal[e] == 1) report.ip_matching.push_back(e);
    }
  }
  report.integral = report.lp_value == report.ip_value;
  return report;
}

}  // namespace netbargain
