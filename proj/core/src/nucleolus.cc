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

#include "netbargain/nucleolus.h"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "netbargain/error.h"
#include "netbargain/lp.h"

namespace netbargain {
namespace {

// Coalitions whose satisfaction x(S) - v(S) is at most (or below) a bound.
struct Candidate {
  Rational satisfaction;
  Coalition coalition;
};

class CoalitionFamily {
 public:
  virtual ~CoalitionFamily() = default;
  virtual Rational Value(Coalition s) = 0;
  virtual std::vector<Coalition> Seed() = 0;
  // Members with x(S) - v(S) < bound (strict) or <= bound, in no particular
  // order. `skip` filters out pinned coalitions.
  virtual void Below(const Allocation& x, const Rational& bound, bool strict,
                     const std::function<bool(Coalition)>& skip,
                     std::vector<Candidate>& out) = 0;
};

bool Passes(const Rational& satisfaction, const Rational& bound, bool strict) {
  return strict ? satisfaction < bound : satisfaction <= bound;
}

class AllCoalitions final : public CoalitionFamily {
 public:
  explicit AllCoalitions(const Instance& inst)
      : n_(inst.num_agents()), values_(std::uint64_t{1} << n_) {
    for (std::uint64_t s = 1; s + 1 < values_.size(); ++s) {
      values_[s] = CoalitionValue(inst, Coalition(s));
    }
  }

  Rational Value(Coalition s) override { return values_[s.bits()]; }

  std::vector<Coalition> Seed() override {
    std::vector<Coalition> seed;
    for (AgentIndex a = 0; a < n_; ++a) seed.push_back(Coalition::Singleton(a));
    return seed;
  }

  void Below(const Allocation& x, const Rational& bound, bool strict,
             const std::function<bool(Coalition)>& skip, std::vector<Candidate>& out) override {
    const std::uint64_t full = values_.size() - 1;
    paid_.resize(values_.size());
    paid_[0] = 0;
    Rational satisfaction;
    for (std::uint64_t s = 1; s < full; ++s) {
      const std::uint64_t low = s & (~s + 1);
      paid_[s] = paid_[s ^ low] + x[std::countr_zero(low)];
      satisfaction = paid_[s] - values_[s];
      if (Passes(satisfaction, bound, strict) && !skip(Coalition(s))) {
        out.push_back({satisfaction, Coalition(s)});
      }
    }
  }

 private:
  int n_;
  std::vector<Rational> values_;
  std::vector<Rational> paid_;
};

// Singletons and stars {b} ∪ T of a ConstrainedBipartite instance.
class StarCoalitions final : public CoalitionFamily {
 public:
  explicit StarCoalitions(const Instance& inst) : inst_(inst) {
    for (EdgeIndex e = 0; e < inst.num_edges(); ++e) {
      const Edge& edge = inst.edge(e);
      const AgentIndex b = inst.side(edge.u) == Side::kB ? edge.u : edge.v;
      weight_[(std::uint64_t{1} << b) | (std::uint64_t{1} << edge.Other(b))] = edge.weight;
    }
  }

  Rational Value(Coalition s) override {
    if (s.Size() <= 1) return 0;
    Rational total;
    AgentIndex centre = -1;
    for (AgentIndex a : s.Members()) {
      if (inst_.side(a) == Side::kB) centre = a;
    }
    for (AgentIndex a : s.Members()) {
      if (a != centre) total += weight_.at(Coalition::Singleton(a).With(centre).bits());
    }
    return total;
  }

  std::vector<Coalition> Seed() override {
    std::vector<Coalition> seed;
    for (AgentIndex a = 0; a < inst_.num_agents(); ++a) seed.push_back(Coalition::Singleton(a));
    return seed;
  }

  void Below(const Allocation& x, const Rational& bound, bool strict,
             const std::function<bool(Coalition)>& skip, std::vector<Candidate>& out) override {
    for (AgentIndex a = 0; a < inst_.num_agents(); ++a) {
      const Coalition s = Coalition::Singleton(a);
      if (Passes(x[a], bound, strict) && !skip(s)) out.push_back({x[a], s});
    }
    for (AgentIndex b = 0; b < inst_.num_agents(); ++b) {
      if (inst_.side(b) != Side::kB || inst_.incident(b).empty()) continue;
      gains_.clear();
      for (EdgeIndex e : inst_.incident(b)) {
        const Edge& edge = inst_.edge(e);
        const AgentIndex a = edge.Other(b);
        gains_.push_back({edge.weight - x[a], a});
      }
      std::sort(gains_.begin(), gains_.end(), [](const auto& l, const auto& r) {
        return l.first > r.first || (l.first == r.first && l.second < r.second);
      });
      // Satisfaction of {b} ∪ T is x_b - sum of gains over T; collect every
      // T with 1 <= |T| <= c_b passing the bound.
      threshold_ = x[b] - bound;
      limit_ = std::min<int>(inst_.capacity(b), static_cast<int>(gains_.size()));
      Search(b, 0, 0, Rational(0), Coalition::Singleton(b), x, strict, skip, out);
    }
  }

 private:
  void Search(AgentIndex b, size_t next, int taken, const Rational& gain, Coalition members,
              const Allocation& x, bool strict, const std::function<bool(Coalition)>& skip,
              std::vector<Candidate>& out) {
    if (taken > 0 && (strict ? gain > threshold_ : gain >= threshold_) && !skip(members)) {
      out.push_back({x[b] - gain, members});
    }
    if (taken == limit_) return;
    // Optimistic completion: the best remaining gains, positive ones only.
    Rational best = gain;
    for (size_t k = next, added = 0; k < gains_.size() && taken + static_cast<int>(added) < limit_;
         ++k, ++added) {
      if (sgn(gains_[k].first) <= 0) {
        if (added == 0 && taken == 0) best += gains_[k].first;
        break;
      }
      best += gains_[k].first;
    }
    if (strict ? best <= threshold_ : best < threshold_) return;
    for (size_t k = next; k < gains_.size(); ++k) {
      Search(b, k + 1, taken + 1, gain + gains_[k].first, members.With(gains_[k].second), x,
             strict, skip, out);
    }
  }

  const Instance& inst_;
  std::unordered_map<std::uint64_t, Rational> weight_;
  std::vector<std::pair<Rational, AgentIndex>> gains_;
  Rational threshold_;
  int limit_ = 0;
};

// Row-reduced basis of pinned coalition indicator vectors.
class Span {
 public:
  explicit Span(int n) : n_(n) {}

  int rank() const { return static_cast<int>(rows_.size()); }

  bool Contains(Coalition s) const {
    std::vector<Rational> v = Indicator(s);
    Reduce(v);
    return std::all_of(v.begin(), v.end(), [](const Rational& r) { return sgn(r) == 0; });
  }

  void Add(Coalition s) {
    std::vector<Rational> v = Indicator(s);
    Reduce(v);
    auto it = std::find_if(v.begin(), v.end(), [](const Rational& r) { return sgn(r) != 0; });
    if (it == v.end()) return;
    const int pivot = static_cast<int>(it - v.begin());
    const Rational scale = v[pivot];
    for (auto& r : v) r /= scale;
    for (auto& [p, row] : rows_) {
      if (sgn(row[pivot]) == 0) continue;
      const Rational f = row[pivot];
      for (int k = 0; k < n_; ++k) row[k] -= f * v[k];
    }
    rows_.emplace_back(pivot, std::move(v));
  }

 private:
  std::vector<Rational> Indicator(Coalition s) const {
    std::vector<Rational> v(n_);
    for (AgentIndex a : s.Members()) v[a] = 1;
    return v;
  }

  void Reduce(std::vector<Rational>& v) const {
    for (const auto& [pivot, row] : rows_) {
      if (sgn(v[pivot]) == 0) continue;
      const Rational f = v[pivot];
      for (int k = 0; k < n_; ++k) v[k] -= f * row[k];
    }
  }

  int n_;
  std::vector<std::pair<int, std::vector<Rational>>> rows_;
};

class MaschlerScheme {
 public:
  MaschlerScheme(const Instance& inst, CoalitionFamily& family)
      : inst_(inst), family_(family), n_(inst.num_agents()), span_(n_) {}

  NucleolusResult Run() {
    NucleolusResult result;
    const Coalition grand = inst_.grand();
    grand_value_ = CoalitionValue(inst_, grand);
    if (n_ == 0) return result;
    span_.Add(grand);
    for (Coalition s : family_.Seed()) AddRow(s);

    while (span_.rank() < n_) {
      const lp::Solution round = SolveWithRows(std::nullopt, std::nullopt);
      const Rational epsilon = round.primal[n_];
      const Allocation x(round.primal.begin(), round.primal.begin() + n_);

      std::vector<Candidate> tight;
      family_.Below(x, epsilon, false, [this](Coalition s) { return Pinned(s); }, tight);
      std::vector<Coalition> unresolved;
      for (const Candidate& c : tight) {
        AddRow(c.coalition);
        unresolved.push_back(c.coalition);
      }
      std::sort(unresolved.begin(), unresolved.end());
      if (unresolved.empty()) {
        throw Error(ErrorCode::kInternal, "no coalition is tight at the round optimum");
      }

      // Drop candidates that leave the bound somewhere on the optimal face
      // until the remainder is tight everywhere on it.
      while (true) {
        lp::LinearExpr probe;
        Rational target;
        for (Coalition s : unresolved) {
          for (AgentIndex a : s.Members()) probe.push_back({a, 1});
          target += values_.at(s.bits()) + epsilon;
        }
        const lp::Solution face = SolveWithRows(probe, epsilon);
        if (face.objective_value == target) break;
        std::vector<Coalition> still_tight;
        for (Coalition s : unresolved) {
          if (Sum(face.primal, s) - values_.at(s.bits()) == epsilon) still_tight.push_back(s);
        }
        unresolved = std::move(still_tight);
      }

      Level level{epsilon, unresolved};
      for (Coalition s : unresolved) {
        fixed_.emplace_back(s, values_.at(s.bits()) + epsilon);
        span_.Add(s);
      }
      span_cache_.clear();
      std::erase_if(active_, [this](Coalition s) { return Pinned(s); });
      result.levels.push_back(std::move(level));
      last_point_ = x;
    }

    // The pinned equalities now determine x; any feasible point is it.
    const lp::Solution final_point = SolveWithRows(lp::LinearExpr{}, std::nullopt);
    result.allocation.assign(final_point.primal.begin(), final_point.primal.begin() + n_);
    result.lp_solves = lp_solves_;
    result.rows_generated = rows_generated_;
    return result;
  }

 private:
  std::function<bool(Coalition)> Skipper() {
    return [this](Coalition s) { return Pinned(s) || active_set_.contains(s.bits()); };
  }

  bool Pinned(Coalition s) {
    auto it = span_cache_.find(s.bits());
    if (it != span_cache_.end()) return it->second;
    const bool pinned = span_.Contains(s);
    span_cache_.emplace(s.bits(), pinned);
    return pinned;
  }

  void AddRow(Coalition s) {
    if (Pinned(s) || !active_set_.insert(s.bits()).second) return;
    values_.emplace(s.bits(), family_.Value(s));
    active_.push_back(s);
    ++rows_generated_;
  }

  lp::LinearProgram BuildProgram() const {
    lp::LinearProgram program;
    for (AgentIndex a = 0; a < n_; ++a) program.AddVariable("x_" + std::to_string(a));
    const int t = program.AddVariable("t", std::nullopt, std::nullopt);
    lp::LinearExpr all;
    for (AgentIndex a = 0; a < n_; ++a) all.push_back({a, 1});
    program.AddConstraint(std::move(all), lp::Relation::kEqual, grand_value_);
    for (const auto& [s, rhs] : fixed_) {
      lp::LinearExpr row;
      for (AgentIndex a : s.Members()) row.push_back({a, 1});
      program.AddConstraint(std::move(row), lp::Relation::kEqual, rhs);
    }
    for (Coalition s : active_) {
      lp::LinearExpr row;
      for (AgentIndex a : s.Members()) row.push_back({a, 1});
      row.push_back({t, -1});
      program.AddConstraint(std::move(row), lp::Relation::kGreaterEqual, values_.at(s.bits()));
    }
    program.SetObjective(lp::Sense::kMaximize, {{t, 1}});
    return program;
  }

  // With no probe: maximizes t over the rows (generating missing ones).
  // With a probe and a face value: maximizes the probe over t = face value.
  // With an empty probe and no face value: any point meeting the pinned rows.
  lp::Solution SolveWithRows(const std::optional<lp::LinearExpr>& probe,
                             const std::optional<Rational>& face) {
    while (true) {
      lp::LinearProgram program = BuildProgram();
      lp::Solution sol;
      ++lp_solves_;
      if (probe && face) {
        sol = lp::SolveOverFace(program, *face, *probe);
      } else {
        if (probe) program.SetObjective(lp::Sense::kMaximize, {});
        sol = lp::Solve(program);
        if (sol.status != lp::Status::kOptimal) {
          throw Error(ErrorCode::kInternal, "round program is not solvable");
        }
      }
      if (probe && !face) return sol;
      const Rational bound = face ? *face : sol.primal[n_];
      const Allocation x(sol.primal.begin(), sol.primal.begin() + n_);
      std::vector<Candidate> violated;
      family_.Below(x, bound, true, Skipper(), violated);
      if (violated.empty()) return sol;
      const size_t keep = std::max<size_t>(static_cast<size_t>(n_), 8);
      if (violated.size() > keep) {
        std::partial_sort(violated.begin(), violated.begin() + keep, violated.end(),
                          [](const Candidate& l, const Candidate& r) {
                            return l.satisfaction < r.satisfaction ||
                                   (l.satisfaction == r.satisfaction && l.coalition < r.coalition);
                          });
        violated.resize(keep);
      }
      for (const Candidate& c : violated) AddRow(c.coalition);
    }
  }

  const Instance& inst_;
  CoalitionFamily& family_;
  int n_;
  Span span_;
  Rational grand_value_;
  std::vector<std::pair<Coalition, Rational>> fixed_;
  std::vector<Coalition> active_;
  std::unordered_set<std::uint64_t> active_set_;
  std::unordered_map<std::uint64_t, Rational> values_;
  std::unordered_map<std::uint64_t, bool> span_cache_;
  Allocation last_point_;
  int lp_solves_ = 0;
  int rows_generated_ = 0;
};

}  // namespace

NucleolusResult NucleolusBruteforceDetailed(const Instance& inst) {
  if (inst.num_agents() > kBruteforceNucleolusLimit) {
    throw Error(ErrorCode::kTooLarge, std::to_string(inst.num_agents()) +
                                          " agents exceed the brute-force nucleolus limit");
  }
  AllCoalitions family(inst);
  return MaschlerScheme(inst, family).Run();
}

Allocation NucleolusBruteforce(const Instance& inst) {
  return NucleolusBruteforceDetailed(inst).allocation;
}

NucleolusResult NucleolusPruned(const Instance& inst) {
  if (inst.mode() != Mode::kConstrainedBipartite) {
    throw Error(ErrorCode::kWrongMode, "the pruned nucleolus needs a ConstrainedBipartite instance");
  }
  StarCoalitions family(inst);
  return MaschlerScheme(inst, family).Run();
}

std::vector<ExcessRecord> ExcessProfile(const Instance& inst, const Allocation& x,
                                        std::optional<std::span<const Coalition>> family) {
  std::vector<ExcessRecord> records;
  CharacteristicFunction v(inst);
  if (family) {
    for (Coalition s : *family) records.push_back({s, v(s) - Sum(x, s)});
  } else {
    const int n = inst.num_agents();
    if (n > kEnumerationLimit) {
      throw Error(ErrorCode::kTooLarge, "excess profile over all coalitions needs n <= " +
                                            std::to_string(kEnumerationLimit));
    }
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    for (std::uint64_t s = 1; s < full; ++s) {
      records.push_back({Coalition(s), v(Coalition(s)) - Sum(x, Coalition(s))});
    }
  }
  std::sort(records.begin(), records.end(), [](const ExcessRecord& l, const ExcessRecord& r) {
    return l.excess > r.excess || (l.excess == r.excess && l.coalition < r.coalition);
  });
  return records;
}

Ordering LexCompare(std::span<const Rational> p, std::span<const Rational> q) {
  if (p.size() != q.size()) {
    throw Error(ErrorCode::kLengthMismatch, "excess vectors of lengths " +
                                                std::to_string(p.size()) + " and " +
                                                std::to_string(q.size()));
  }
  for (size_t k = 0; k < p.size(); ++k) {
    if (p[k] < q[k]) return Ordering::kLess;
    if (p[k] > q[k]) return Ordering::kGreater;
  }
  return Ordering::kEqual;
}

Ordering LexCompare(const std::vector<ExcessRecord>& p, const std::vector<ExcessRecord>& q) {
  std::vector<Rational> a, b;
  for (const auto& r : p) a.push_back(r.excess);
  for (const auto& r : q) b.push_back(r.excess);
  return LexCompare(a, b);
}

}  // namespace netbargain
