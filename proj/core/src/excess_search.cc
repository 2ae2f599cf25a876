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

#include "excess_search.h"

#include "netbargain/error.h"
#include "netbargain/lp.h"

namespace netbargain::internal {

ExcessTable::ExcessTable(const CharacteristicFunction& v, const Allocation& x)
    : n_(v.instance().num_agents()) {
  if (n_ > kEnumerationLimit) {
    throw Error(ErrorCode::kTooLarge, std::to_string(n_) + " agents exceed the enumeration limit");
  }
  const std::uint64_t count = std::uint64_t{1} << n_;
  excess_.resize(count);
  std::vector<Rational> paid(count);
  for (std::uint64_t s = 1; s < count; ++s) {
    const std::uint64_t low = s & (~s + 1);
    paid[s] = paid[s ^ low] + x[std::countr_zero(low)];
    excess_[s] = v(Coalition(s)) - paid[s];
  }
}

std::optional<ExcessWitness> ExcessTable::Max(Coalition include, Coalition exclude) const {
  std::optional<ExcessWitness> best;
  const std::uint64_t count = std::uint64_t{1} << n_;
  for (std::uint64_t s = 1; s < count; ++s) {
    if ((s & include.bits()) != include.bits() || (s & exclude.bits()) != 0) continue;
    if (!best || excess_[s] > best->excess) best = ExcessWitness{Coalition(s), excess_[s]};
  }
  return best;
}

std::optional<ExcessWitness> MaxExcessStars(const Instance& inst, const Allocation& x,
                                            Coalition include, Coalition exclude) {
  if (inst.mode() != Mode::kConstrainedBipartite) {
    throw Error(ErrorCode::kWrongMode, "star decomposition requires ConstrainedBipartite");
  }
  const int n = inst.num_agents();
  Coalition forced = include;
  for (AgentIndex a = 0; a < n; ++a) {
    if (!exclude.Contains(a) && sgn(x[a]) < 0) forced = forced.With(a);
  }
  std::vector<AgentIndex> optional_centres;
  for (AgentIndex b = 0; b < n; ++b) {
    if (inst.side(b) == Side::kB && !forced.Contains(b) && !exclude.Contains(b)) {
      optional_centres.push_back(b);
    }
  }
  if (optional_centres.size() > 20) {
    throw Error(ErrorCode::kTooLarge, "too many B-agents for the star search");
  }

  std::optional<ExcessWitness> best;
  auto offer = [&best](Coalition s, const Rational& excess) {
    if (s.Empty()) return;
    if (!best || excess > best->excess ||
        (excess == best->excess && s.bits() < best->coalition.bits())) {
      best = ExcessWitness{s, excess};
    }
  };
  for (AgentIndex a = 0; a < n; ++a) {
    if (!exclude.Contains(a) && forced.SubsetOf(Coalition::Singleton(a))) {
      offer(Coalition::Singleton(a), -x[a]);
    }
  }

  const Rational forced_paid = Sum(x, forced);
  const std::uint64_t subsets = std::uint64_t{1} << optional_centres.size();
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    Coalition opened;
    for (size_t k = 0; k < optional_centres.size(); ++k) {
      if ((mask >> k) & 1) opened = opened.With(optional_centres[k]);
    }
    Coalition hubs;
    for (AgentIndex b = 0; b < n; ++b) {
      if (inst.side(b) == Side::kB && (opened.Contains(b) || forced.Contains(b))) {
        hubs = hubs.With(b);
      }
    }

    // Assignment of A-agents to hubs maximizing the net gain of each edge.
    lp::LinearProgram program;
    lp::LinearExpr objective;
    std::vector<std::pair<int, EdgeIndex>> columns;
    std::vector<lp::LinearExpr> agent_rows(n);
    for (EdgeIndex e = 0; e < inst.num_edges(); ++e) {
      const Edge& edge = inst.edge(e);
      const AgentIndex b = inst.side(edge.u) == Side::kB ? edge.u : edge.v;
      const AgentIndex a = edge.Other(b);
      if (!hubs.Contains(b) || exclude.Contains(a)) continue;
      Rational gain = edge.weight;
      if (!forced.Contains(a)) gain -= x[a];
      if (sgn(gain) <= 0) continue;
      const int var = program.AddVariable("chi_" + std::to_string(e), Rational(0), Rational(1));
      objective.push_back({var, gain});
      agent_rows[a].push_back({var, 1});
      agent_rows[b].push_back({var, 1});
      columns.emplace_back(var, e);
    }
    Coalition members = forced | opened;
    Rational excess = -forced_paid - Sum(x, opened);
    if (!columns.empty()) {
      for (AgentIndex v = 0; v < n; ++v) {
        if (!agent_rows[v].empty()) {
          program.AddConstraint(std::move(agent_rows[v]), lp::Relation::kLessEqual,
                                inst.capacity(v));
        }
      }
      program.SetObjective(lp::Sense::kMaximize, std::move(objective));
      const lp::Solution sol = lp::Solve(program);
      excess += sol.objective_value;
      for (const auto& [var, e] : columns) {
        if (sgn(sol.primal[var]) == 0) continue;
        if (sol.primal[var] != 1) {
          throw Error(ErrorCode::kInternal, "bipartite assignment LP returned a fractional vertex");
        }
        members = members.With(inst.edge(e).u).With(inst.edge(e).v);
      }
    }
    offer(members, excess);
  }
  return best;
}

}  // namespace netbargain::internal
