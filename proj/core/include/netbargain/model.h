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

#ifndef NETBARGAIN_MODEL_H_
#define NETBARGAIN_MODEL_H_

// Network bargaining instances, outcomes, coalitions and the
// characteristic function v(S) = maximum-weight b-matching inside S.

#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "netbargain/rational.h"

namespace netbargain {

enum class Mode { kGeneralUnitCap, kBipartiteCap, kConstrainedBipartite };
enum class Side { kNone, kA, kB };

std::string_view ModeName(Mode mode);
std::optional<Mode> ParseMode(std::string_view name);
std::string_view SideName(Side side);

using AgentIndex = int;
using EdgeIndex = int;

// Agents are stored as bits of a 64-bit word.
inline constexpr int kMaxAgents = 64;

struct AgentSpec {
  std::string id;
  Side side = Side::kNone;
  int capacity = 1;
};

struct EdgeSpec {
  std::string u;
  std::string v;
  Rational weight;
};

// Unvalidated instance description, as read from a file or generator.
struct InstanceDescription {
  Mode mode = Mode::kGeneralUnitCap;
  std::vector<AgentSpec> agents;
  std::vector<EdgeSpec> edges;
};

struct Edge {
  AgentIndex u;  // u < v
  AgentIndex v;
  Rational weight;

  AgentIndex Other(AgentIndex endpoint) const { return endpoint == u ? v : u; }
  bool Touches(AgentIndex a) const { return a == u || a == v; }
};

// A vertex subset of the grand coalition.
class Coalition {
 public:
  constexpr Coalition() = default;
  constexpr explicit Coalition(std::uint64_t bits) : bits_(bits) {}
  static Coalition Of(std::initializer_list<AgentIndex> members);
  static constexpr Coalition Singleton(AgentIndex a) { return Coalition(std::uint64_t{1} << a); }
  static constexpr Coalition Grand(int num_agents) {
    return Coalition(num_agents >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << num_agents) - 1);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool Contains(AgentIndex a) const { return (bits_ >> a) & 1; }
  constexpr bool Empty() const { return bits_ == 0; }
  constexpr int Size() const { return std::popcount(bits_); }
  constexpr bool SubsetOf(Coalition other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr Coalition With(AgentIndex a) const { return Coalition(bits_ | (std::uint64_t{1} << a)); }
  constexpr Coalition Without(AgentIndex a) const {
    return Coalition(bits_ & ~(std::uint64_t{1} << a));
  }
  std::vector<AgentIndex> Members() const;

  friend constexpr bool operator==(Coalition, Coalition) = default;
  friend constexpr auto operator<=>(Coalition, Coalition) = default;
  friend constexpr Coalition operator|(Coalition a, Coalition b) { return Coalition(a.bits_ | b.bits_); }
  friend constexpr Coalition operator&(Coalition a, Coalition b) { return Coalition(a.bits_ & b.bits_); }

 private:
  std::uint64_t bits_ = 0;
};

// Validated, immutable game instance.
class Instance {
 public:
  // Throws Error with SelfLoop, DuplicateEdge, NegativeWeight,
  // NonBipartiteEdge, CapacityViolatesMode, UnknownAgent, DuplicateAgent or
  // TooManyAgents.
  static Instance Build(const InstanceDescription& description);

  Mode mode() const { return mode_; }
  int num_agents() const { return static_cast<int>(agents_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const AgentSpec& agent(AgentIndex a) const { return agents_[a]; }
  const std::string& id(AgentIndex a) const { return agents_[a].id; }
  Side side(AgentIndex a) const { return agents_[a].side; }
  int capacity(AgentIndex a) const { return agents_[a].capacity; }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(EdgeIndex e) const { return edges_[e]; }
  std::span<const EdgeIndex> incident(AgentIndex a) const { return incident_[a]; }

  std::optional<AgentIndex> IndexOf(std::string_view id) const;
  std::optional<EdgeIndex> FindEdge(AgentIndex u, AgentIndex v) const;
  Coalition grand() const { return Coalition::Grand(num_agents()); }
  bool bipartite() const { return mode_ != Mode::kGeneralUnitCap; }

  // Edges with both endpoints in `s`, ascending.
  std::vector<EdgeIndex> EdgesWithin(Coalition s) const;

  InstanceDescription Describe() const;

  // FNV-1a over a canonical text rendering; stable across platforms.
  std::uint64_t Fingerprint() const;

 private:
  Mode mode_ = Mode::kGeneralUnitCap;
  std::vector<AgentSpec> agents_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeIndex>> incident_;
  std::unordered_map<std::string, AgentIndex> index_;
};

inline Instance BuildInstance(const InstanceDescription& description) {
  return Instance::Build(description);
}

struct Contract {
  EdgeIndex edge;
  Rational share_u;  // z_{e,u} for the edge's u endpoint
  Rational share_v;

  const Rational& ShareOf(const Edge& e, AgentIndex a) const {
    return a == e.u ? share_u : share_v;
  }
};

// A contract set M (a b-matching) with per-contract surplus splits.
struct Outcome {
  std::vector<Contract> contracts;  // sorted by edge index

  const Contract* Find(EdgeIndex e) const;
};

// Throws kOutcomeInvariantViolation naming the first broken invariant.
void ValidateOutcome(const Instance& inst, const Outcome& outcome);

// Earnings x_v, indexed by agent.
using Allocation = std::vector<Rational>;

Rational Sum(const Allocation& x, Coalition s);

// v(S): maximum weight of a capacity-respecting b-matching inside S.
Rational CoalitionValue(const Instance& inst, Coalition s);

// Earnings induced by an outcome. Throws kOutcomeInvariantViolation.
Allocation Earnings(const Instance& inst, const Outcome& outcome);

// Memoizing wrapper around CoalitionValue for repeated queries.
class CharacteristicFunction {
 public:
  explicit CharacteristicFunction(const Instance& inst) : inst_(&inst) {}

  const Rational& operator()(Coalition s) const;
  const Instance& instance() const { return *inst_; }

 private:
  const Instance* inst_;
  mutable std::unordered_map<std::uint64_t, Rational> cache_;
};

// Number of agents up to which operations fall back to enumerating all
// 2^n coalitions.
inline constexpr int kEnumerationLimit = 16;

}  // namespace netbargain

#endif  // NETBARGAIN_MODEL_H_
