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

#include "netbargain/model.h"

#include <algorithm>
#include <set>
#include <utility>

#include "netbargain/error.h"
#include "netbargain/matching.h"

namespace netbargain {

std::string_view ModeName(Mode mode) {
  switch (mode) {
    case Mode::kGeneralUnitCap: return "GeneralUnitCap";
    case Mode::kBipartiteCap: return "BipartiteCap";
    case Mode::kConstrainedBipartite: return "ConstrainedBipartite";
  }
  return "?";
}

std::optional<Mode> ParseMode(std::string_view name) {
  for (Mode m : {Mode::kGeneralUnitCap, Mode::kBipartiteCap, Mode::kConstrainedBipartite}) {
    if (ModeName(m) == name) return m;
  }
  return std::nullopt;
}

std::string_view SideName(Side side) {
  switch (side) {
    case Side::kNone: return "none";
    case Side::kA: return "A";
    case Side::kB: return "B";
  }
  return "?";
}

Coalition Coalition::Of(std::initializer_list<AgentIndex> members) {
  Coalition s;
  for (AgentIndex a : members) s = s.With(a);
  return s;
}

std::vector<AgentIndex> Coalition::Members() const {
  std::vector<AgentIndex> out;
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
  return out;
}

Instance Instance::Build(const InstanceDescription& d) {
  Instance inst;
  inst.mode_ = d.mode;
  if (d.agents.size() > static_cast<size_t>(kMaxAgents)) {
    throw Error(ErrorCode::kTooManyAgents,
                std::to_string(d.agents.size()) + " agents exceeds the limit of " +
                    std::to_string(kMaxAgents));
  }
  for (const AgentSpec& agent : d.agents) {
    if (!inst.index_.emplace(agent.id, static_cast<AgentIndex>(inst.agents_.size())).second) {
      throw Error(ErrorCode::kDuplicateAgent, "agent '" + agent.id + "' declared twice");
    }
    if (agent.capacity < 1) {
      throw Error(ErrorCode::kCapacityViolatesMode,
                  "agent '" + agent.id + "' has capacity " + std::to_string(agent.capacity));
    }
    switch (d.mode) {
      case Mode::kGeneralUnitCap:
        if (agent.capacity != 1) {
          throw Error(ErrorCode::kCapacityViolatesMode,
                      "GeneralUnitCap requires capacity 1 for agent '" + agent.id + "'");
        }
        if (agent.side != Side::kNone) {
          throw Error(ErrorCode::kSideViolatesMode,
                      "GeneralUnitCap agents have no side; '" + agent.id + "' has one");
        }
        break;
      case Mode::kConstrainedBipartite:
        if (agent.side == Side::kA && agent.capacity != 1) {
          throw Error(ErrorCode::kCapacityViolatesMode,
                      "ConstrainedBipartite A-agent '" + agent.id + "' must have capacity 1");
        }
        break;
      case Mode::kBipartiteCap:
        break;
    }
    inst.agents_.push_back(agent);
  }

  std::set<std::pair<AgentIndex, AgentIndex>> seen;
  inst.incident_.resize(inst.agents_.size());
  for (const EdgeSpec& spec : d.edges) {
    auto u = inst.IndexOf(spec.u);
    auto v = inst.IndexOf(spec.v);
    if (!u || !v) {
      throw Error(ErrorCode::kUnknownAgent,
                  "edge (" + spec.u + ", " + spec.v + ") references an undeclared agent");
    }
    if (*u == *v) throw Error(ErrorCode::kSelfLoop, "self-loop at '" + spec.u + "'");
    if (*u > *v) std::swap(*u, *v);
    if (!seen.emplace(*u, *v).second) {
      throw Error(ErrorCode::kDuplicateEdge,
                  "edge (" + spec.u + ", " + spec.v + ") declared twice");
    }
    if (sgn(spec.weight) < 0) {
      throw Error(ErrorCode::kNegativeWeight, "edge (" + spec.u + ", " + spec.v +
                                                  ") has weight " + FormatRational(spec.weight));
    }
    if (inst.bipartite()) {
      const Side su = inst.agents_[*u].side;
      const Side sv = inst.agents_[*v].side;
      const bool ok = (su == Side::kA && sv == Side::kB) || (su == Side::kB && sv == Side::kA);
      if (!ok) {
        throw Error(ErrorCode::kNonBipartiteEdge,
                    "edge (" + spec.u + ", " + spec.v + ") does not join an A- and a B-agent");
      }
    }
    const EdgeIndex e = static_cast<EdgeIndex>(inst.edges_.size());
    inst.edges_.push_back({*u, *v, spec.weight});
    inst.incident_[*u].push_back(e);
    inst.incident_[*v].push_back(e);
  }
  return inst;
}

std::optional<AgentIndex> Instance::IndexOf(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<EdgeIndex> Instance::FindEdge(AgentIndex u, AgentIndex v) const {
  for (EdgeIndex e : incident_[u]) {
    if (edges_[e].Other(u) == v) return e;
  }
  return std::nullopt;
}

std::vector<EdgeIndex> Instance::EdgesWithin(Coalition s) const {
  std::vector<EdgeIndex> out;
  for (EdgeIndex e = 0; e < num_edges(); ++e) {
    if (s.Contains(edges_[e].u) && s.Contains(edges_[e].v)) out.push_back(e);
  }
  return out;
}

InstanceDescription Instance::Describe() const {
  InstanceDescription d;
  d.mode = mode_;
  d.agents = agents_;
  for (const Edge& e : edges_) d.edges.push_back({agents_[e.u].id, agents_[e.v].id, e.weight});
  return d;
}

std::uint64_t Instance::Fingerprint() const {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  auto feed = [&hash](std::string_view text) {
    for (unsigned char c : text) {
      hash ^= c;
      hash *= 0x100000001b3ULL;
    }
    hash ^= 0xff;
    hash *= 0x100000001b3ULL;
  };
  feed(ModeName(mode_));
  for (const AgentSpec& a : agents_) {
    feed(a.id);
    feed(SideName(a.side));
    feed(std::to_string(a.capacity));
  }
  for (const Edge& e : edges_) {
    feed(agents_[e.u].id);
    feed(agents_[e.v].id);
    feed(FormatRational(e.weight));
  }
  return hash;
}

const Contract* Outcome::Find(EdgeIndex e) const {
  auto it = std::lower_bound(contracts.begin(), contracts.end(), e,
                             [](const Contract& c, EdgeIndex key) { return c.edge < key; });
  return it != contracts.end() && it->edge == e ? &*it : nullptr;
}

void ValidateOutcome(const Instance& inst, const Outcome& outcome) {
  std::vector<int> degree(inst.num_agents(), 0);
  EdgeIndex previous = -1;
  for (const Contract& c : outcome.contracts) {
    if (c.edge < 0 || c.edge >= inst.num_edges()) {
      throw Error(ErrorCode::kOutcomeInvariantViolation,
                  "contract references unknown edge " + std::to_string(c.edge));
    }
    if (c.edge <= previous) {
      throw Error(ErrorCode::kOutcomeInvariantViolation,
                  "contracts must be sorted by edge index without repeats");
    }
    previous = c.edge;
    const Edge& e = inst.edge(c.edge);
    if (sgn(c.share_u) < 0 || sgn(c.share_v) < 0) {
      throw Error(ErrorCode::kOutcomeInvariantViolation,
                  "negative split on edge (" + inst.id(e.u) + ", " + inst.id(e.v) + ")");
    }
    if (c.share_u + c.share_v != e.weight) {
      throw Error(ErrorCode::kOutcomeInvariantViolation,
                  "splits on edge (" + inst.id(e.u) + ", " + inst.id(e.v) +
                      ") do not sum to its weight");
    }
    if (++degree[e.u] > inst.capacity(e.u) || ++degree[e.v] > inst.capacity(e.v)) {
      throw Error(ErrorCode::kOutcomeInvariantViolation,
                  "contract set exceeds a capacity at edge (" + inst.id(e.u) + ", " +
                      inst.id(e.v) + ")");
    }
  }
}

Rational Sum(const Allocation& x, Coalition s) {
  Rational total;
  for (std::uint64_t b = s.bits(); b != 0; b &= b - 1) total += x[std::countr_zero(b)];
  return total;
}

Rational CoalitionValue(const Instance& inst, Coalition s) {
  const auto within = inst.EdgesWithin(s);
  if (within.empty()) return 0;
  if (static_cast<int>(within.size()) <= kDefaultExactEdgeLimit || !inst.bipartite()) {
    return BmatchingExact(inst, s).value;
  }
  // Bipartite b-matching polytopes are integral, so the LP optimum is v(S).
  return BmatchingLp(inst, s).value;
}

Allocation Earnings(const Instance& inst, const Outcome& outcome) {
  ValidateOutcome(inst, outcome);
  Allocation x(inst.num_agents());
  for (const Contract& c : outcome.contracts) {
    const Edge& e = inst.edge(c.edge);
    x[e.u] += c.share_u;
    x[e.v] += c.share_v;
  }
  return x;
}

const Rational& CharacteristicFunction::operator()(Coalition s) const {
  auto it = cache_.find(s.bits());
  if (it != cache_.end()) return it->second;
  return cache_.emplace(s.bits(), CoalitionValue(*inst_, s)).first->second;
}

}  // namespace netbargain
