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


#include "netbargain/oracle.h"

#include <algorithm>
#include <bit>
#include <thread>

#include "netbargain/error.h"

namespace netbargain::oracle {
namespace {

using Bits = std::uint64_t;

Bits LowBit(Bits s) { return s & (~s + 1); }

// Best b-matching inside `s` by branching on edges; used when neither side
// of a bipartite instance has unit capacity.
class EdgeBranching {
 public:
  EdgeBranching(const Instance& inst, Bits s) : inst_(inst), left_(inst.num_agents()) {
    for (AgentIndex a = 0; a < inst.num_agents(); ++a) left_[a] = inst.capacity(a);
    for (const Edge& e : inst.edges()) {
      const Bits pair = (Bits{1} << e.u) | (Bits{1} << e.v);
      if ((pair & s) == pair) edges_.push_back(&e);
    }
  }

  Rational Run() {
    Recurse(0, Rational(0));
    return best_;
  }

 private:
  void Recurse(size_t k, const Rational& value) {
    if (value > best_) best_ = value;
    if (k == edges_.size()) return;
    const Edge& e = *edges_[k];
    if (left_[e.u] > 0 && left_[e.v] > 0) {
      --left_[e.u];
      --left_[e.v];
      Recurse(k + 1, value + e.weight);
      ++left_[e.u];
      ++left_[e.v];
    }
    Recurse(k + 1, value);
  }

  const Instance& inst_;
  std::vector<int> left_;
  std::vector<const Edge*> edges_;
  Rational best_;
};

class TableBuilder {
 public:
  explicit TableBuilder(const Instance& inst)
      : inst_(inst), n_(inst.num_agents()), adjacency_(n_), weight_(n_, std::vector<Rational>(n_)) {
    for (const Edge& e : inst.edges()) {
      adjacency_[e.u] |= Bits{1} << e.v;
      adjacency_[e.v] |= Bits{1} << e.u;
      weight_[e.u][e.v] = e.weight;
      weight_[e.v][e.u] = e.weight;
    }
  }

  Rational Compute(Bits s, const std::vector<Rational>& v) const {
    switch (inst_.mode()) {
      case Mode::kGeneralUnitCap: {
        const int u = std::countr_zero(s);
        const Bits rest = s & ~(Bits{1} << u);
        Rational best = v[rest];
        for (Bits nb = adjacency_[u] & rest; nb; nb &= nb - 1) {
          const int a = std::countr_zero(nb);
          Rational candidate = weight_[u][a] + v[rest & ~(Bits{1} << a)];
          if (candidate > best) best = candidate;
        }
        return best;
      }
      case Mode::kConstrainedBipartite: {
        int centre = -1;
        for (Bits m = s; m; m &= m - 1) {
          const int a = std::countr_zero(m);
          if (inst_.side(a) == Side::kB) {
            centre = a;
            break;
          }
        }
        if (centre < 0) return 0;
        const Bits rest = s & ~(Bits{1} << centre);
        const Bits nb = adjacency_[centre] & rest;
        Rational best = v[rest];
        // Every nonempty T within the neighbourhood, at most c_b of them.
        for (Bits t = nb; t; t = (t - 1) & nb) {
          if (std::popcount(t) > inst_.capacity(centre)) continue;
          Rational candidate = v[rest & ~t];
          for (Bits m = t; m; m &= m - 1) candidate += weight_[centre][std::countr_zero(m)];
          if (candidate > best) best = candidate;
        }
        return best;
      }
      case Mode::kBipartiteCap:
        return EdgeBranching(inst_, s).Run();
    }
    return 0;
  }

 private:
  const Instance& inst_;
  int n_;
  std::vector<Bits> adjacency_;
  std::vector<std::vector<Rational>> weight_;
};

// Revised simplex for min c.y subject to M y = r, y >= 0, where every column
// of M is sign * indicator(S) over the agent rows plus an optional 1 in an
// extra last row.
struct Column {
  Bits bits;
  int sign;
  bool extra;
  Rational cost;
};

struct StandardResult {
  std::vector<Rational> y;        // per column
  std::vector<Rational> pi;       // row multipliers
  Rational objective;
};

class RevisedSimplex {
 public:
  RevisedSimplex(int agents, bool extra_row, std::vector<Column> columns, std::vector<Rational> rhs)
      : agents_(agents),
        m_(agents + (extra_row ? 1 : 0)),
        columns_(std::move(columns)),
        flip_(m_, 1),
        beta_(std::move(rhs)),
        inverse_(m_, std::vector<Rational>(m_)),
        basic_(m_),
        sums_(Bits{1} << agents) {
    for (int i = 0; i < m_; ++i) {
      if (beta_[i] < 0) {
        flip_[i] = -1;
        beta_[i] = -beta_[i];
      }
      inverse_[i][i] = 1;
      basic_[i] = Artificial(i);
    }
  }

  StandardResult Run() {
    phase_one_ = true;
    Iterate();
    for (int i = 0; i < m_; ++i) {
      if (IsArtificial(basic_[i]) && sgn(beta_[i]) != 0) {
        throw Error(ErrorCode::kInternal, "oracle program is infeasible");
      }
    }
    EvictArtificials();
    phase_one_ = false;
    Iterate();

    StandardResult result;
    result.y.assign(columns_.size(), Rational(0));
    for (int i = 0; i < m_; ++i) {
      if (!IsArtificial(basic_[i])) result.y[basic_[i]] = beta_[i];
    }
    result.pi = Multipliers();
    for (int i = 0; i < m_; ++i) result.pi[i] *= flip_[i];
    for (size_t j = 0; j < columns_.size(); ++j) result.objective += columns_[j].cost * result.y[j];
    return result;
  }

 private:
  int Artificial(int row) const { return static_cast<int>(columns_.size()) + row; }
  bool IsArtificial(int j) const { return j >= static_cast<int>(columns_.size()); }

  Rational Cost(int j) const {
    if (IsArtificial(j)) return phase_one_ ? 1 : 0;
    return phase_one_ ? Rational(0) : columns_[j].cost;
  }

  // Entry of column j in flipped row i.
  Rational Entry(int j, int i) const {
    if (IsArtificial(j)) return j - static_cast<int>(columns_.size()) == i ? 1 : 0;
    const Column& c = columns_[j];
    int raw = 0;
    if (i < agents_) {
      raw = ((c.bits >> i) & 1) ? c.sign : 0;
    } else {
      raw = c.extra ? 1 : 0;
    }
    return raw * flip_[i];
  }

  std::vector<Rational> Multipliers() const {
    std::vector<Rational> pi(m_);
    for (int i = 0; i < m_; ++i) {
      const Rational cb = Cost(basic_[i]);
      if (sgn(cb) == 0) continue;
      for (int k = 0; k < m_; ++k) pi[k] += cb * inverse_[i][k];
    }
    return pi;
  }

  // weights . column j for every real column, with `weights` in flipped rows.
  void Price(const std::vector<Rational>& weights, std::vector<Rational>& out) {
    sums_[0] = 0;
    const Bits full = Bits{1} << agents_;
    for (Bits s = 1; s < full; ++s) {
      const Bits low = LowBit(s);
      const int a = std::countr_zero(low);
      sums_[s] = sums_[s ^ low] + weights[a] * flip_[a];
    }
    out.resize(columns_.size());
    for (size_t j = 0; j < columns_.size(); ++j) {
      const Column& c = columns_[j];
      out[j] = c.sign > 0 ? sums_[c.bits] : Rational(-sums_[c.bits]);
      if (c.extra) out[j] += weights[agents_] * flip_[agents_];
    }
  }

  std::vector<Rational> Direction(int j) const {
    std::vector<Rational> d(m_);
    for (int k = 0; k < m_; ++k) {
      const Rational a = Entry(j, k);
      if (sgn(a) == 0) continue;
      for (int i = 0; i < m_; ++i) d[i] += inverse_[i][k] * a;
    }
    return d;
  }

  void Pivot(int row, int entering, const std::vector<Rational>& d) {
    const Rational p = d[row];
    for (auto& value : inverse_[row]) value /= p;
    beta_[row] /= p;
    for (int i = 0; i < m_; ++i) {
      if (i == row || sgn(d[i]) == 0) continue;
      const Rational f = d[i];
      for (int k = 0; k < m_; ++k) inverse_[i][k] -= f * inverse_[row][k];
      beta_[i] -= f * beta_[row];
    }
    basic_[row] = entering;
  }

  void Iterate() {
    bool bland = false;
    int stalls = 0;
    std::vector<Rational> priced;
    while (true) {
      const std::vector<Rational> pi = Multipliers();
      Price(pi, priced);
      int entering = -1;
      Rational most;
      for (size_t j = 0; j < columns_.size(); ++j) {
        const Rational reduced = Cost(static_cast<int>(j)) - priced[j];
        if (sgn(reduced) >= 0) continue;
        if (entering < 0 || (!bland && reduced < most)) {
          entering = static_cast<int>(j);
          most = reduced;
          if (bland) break;
        }
      }
      if (entering < 0) return;
      const std::vector<Rational> d = Direction(entering);
      int row = -1;
      Rational ratio;
      for (int i = 0; i < m_; ++i) {
        if (sgn(d[i]) <= 0) continue;
        Rational r = beta_[i] / d[i];
        if (row < 0 || r < ratio || (r == ratio && basic_[i] < basic_[row])) {
          row = i;
          ratio = r;
        }
      }
      if (row < 0) throw Error(ErrorCode::kInternal, "oracle program is unbounded");
      stalls = sgn(ratio) == 0 ? stalls + 1 : 0;
      if (stalls > 2 * m_) bland = true;
      Pivot(row, entering, d);
    }
  }

  void EvictArtificials() {
    std::vector<Rational> priced;
    for (int i = 0; i < m_; ++i) {
      if (!IsArtificial(basic_[i])) continue;
      Price(inverse_[i], priced);
      for (size_t j = 0; j < columns_.size(); ++j) {
        if (sgn(priced[j]) == 0) continue;
        Pivot(i, static_cast<int>(j), Direction(static_cast<int>(j)));
        break;
      }
    }
  }

  int agents_;
  int m_;
  std::vector<Column> columns_;
  std::vector<int> flip_;
  std::vector<Rational> beta_;
  std::vector<std::vector<Rational>> inverse_;
  std::vector<int> basic_;
  std::vector<Rational> sums_;
  bool phase_one_ = true;
};

Rational Paid(const Allocation& x, Bits s) {
  Rational total;
  for (Bits m = s; m; m &= m - 1) total += x[std::countr_zero(m)];
  return total;
}

class IndicatorSpan {
 public:
  explicit IndicatorSpan(int n) : n_(n) {}
  int rank() const { return static_cast<int>(basis_.size()); }

  std::vector<Rational> Residual(Bits s) const {
    std::vector<Rational> v(n_);
    for (int a = 0; a < n_; ++a) v[a] = (s >> a) & 1 ? 1 : 0;
    for (const auto& [lead, row] : basis_) {
      if (sgn(v[lead]) == 0) continue;
      const Rational f = v[lead];
      for (int a = 0; a < n_; ++a) v[a] -= f * row[a];
    }
    return v;
  }

  bool Contains(Bits s) const {
    const auto v = Residual(s);
    return std::all_of(v.begin(), v.end(), [](const Rational& r) { return sgn(r) == 0; });
  }

  void Insert(Bits s) {
    auto v = Residual(s);
    int lead = 0;
    while (lead < n_ && sgn(v[lead]) == 0) ++lead;
    if (lead == n_) return;
    const Rational p = v[lead];
    for (auto& r : v) r /= p;
    basis_.emplace_back(lead, std::move(v));
  }

 private:
  int n_;
  std::vector<std::pair<int, std::vector<Rational>>> basis_;
};

}  // namespace

GameTable BuildGameTable(const Instance& inst, int jobs) {
  const int n = inst.num_agents();
  if (n > kGameTableLimit) {
    throw Error(ErrorCode::kTooLarge, std::to_string(n) + " agents exceed the game table limit of " +
                                          std::to_string(kGameTableLimit));
  }
  GameTable table;
  table.instance_hash = inst.Fingerprint();
  table.num_agents = n;
  table.values.assign(Bits{1} << n, Rational(0));
  TableBuilder builder(inst);

  std::vector<std::vector<Bits>> layers(n + 1);
  for (Bits s = 1; s < (Bits{1} << n); ++s) layers[std::popcount(s)].push_back(s);
  jobs = std::max(1, jobs);
  for (int k = 2; k <= n; ++k) {
    const auto& layer = layers[k];
    auto fill = [&](size_t begin, size_t end) {
      for (size_t i = begin; i < end; ++i) table.values[layer[i]] = builder.Compute(layer[i], table.values);
    };
    if (jobs == 1 || layer.size() < 64) {
      fill(0, layer.size());
      continue;
    }
    std::vector<std::thread> workers;
    const size_t chunk = (layer.size() + jobs - 1) / jobs;
    for (size_t begin = 0; begin < layer.size(); begin += chunk) {
      workers.emplace_back(fill, begin, std::min(layer.size(), begin + chunk));
    }
    for (auto& w : workers) w.join();
  }
  return table;
}

CoreLpResult CoreLpFull(const GameTable& table) {
  const int n = table.num_agents;
  CoreLpResult result;
  if (n == 0) return result;
  const Bits full = (Bits{1} << n) - 1;
  std::vector<Column> columns;
  for (Bits s = 1; s <= full; ++s) columns.push_back({s, 1, false, -table.values[s]});
  RevisedSimplex simplex(n, false, columns, std::vector<Rational>(n, Rational(1)));
  const StandardResult solved = simplex.Run();

  Allocation x(n);
  for (int a = 0; a < n; ++a) x[a] = -solved.pi[a];
  for (Bits s = 1; s <= full; ++s) {
    if (Paid(x, s) < table.values[s]) {
      throw Error(ErrorCode::kInternal, "core program multipliers violate a coalition");
    }
  }
  result.min_total = Paid(x, full);
  if (result.min_total != -solved.objective) {
    throw Error(ErrorCode::kInternal, "core program duality gap");
  }
  result.empty = result.min_total > table.values[full];
  if (result.empty) {
    for (size_t j = 0; j < columns.size(); ++j) {
      if (sgn(solved.y[j]) > 0) result.certificate.emplace_back(Coalition(columns[j].bits), solved.y[j]);
    }
  } else {
    result.witness = std::move(x);
  }
  return result;
}

Allocation NucleolusReference(const GameTable& table) {
  const int n = table.num_agents;
  if (n > kReferenceNucleolusLimit) {
    throw Error(ErrorCode::kTooLarge, std::to_string(n) + " agents exceed the reference limit of " +
                                          std::to_string(kReferenceNucleolusLimit));
  }
  if (n == 0) return {};
  const Bits full = (Bits{1} << n) - 1;
  std::vector<std::pair<Bits, Rational>> fixed{{full, table.values[full]}};
  IndicatorSpan span(n);
  span.Insert(full);
  std::vector<Bits> active;
  for (Bits s = 1; s < full; ++s) active.push_back(s);

  Allocation x(n);
  while (span.rank() < n) {
    std::erase_if(active, [&](Bits s) { return span.Contains(s); });
    std::vector<Column> columns;
    for (Bits s : active) columns.push_back({s, 1, true, -table.values[s]});
    for (const auto& [s, value] : fixed) {
      columns.push_back({s, 1, false, -value});
      columns.push_back({s, -1, false, value});
    }
    std::vector<Rational> rhs(n + 1);
    rhs[n] = 1;
    const StandardResult solved = RevisedSimplex(n, true, columns, rhs).Run();

    for (int a = 0; a < n; ++a) x[a] = -solved.pi[a];
    const Rational t = solved.pi[n];
    if (t != solved.objective) throw Error(ErrorCode::kInternal, "round duality gap");
    for (Bits s : active) {
      if (Paid(x, s) - t < table.values[s]) {
        throw Error(ErrorCode::kInternal, "round multipliers violate a coalition");
      }
    }
    for (const auto& [s, value] : fixed) {
      if (Paid(x, s) != value) throw Error(ErrorCode::kInternal, "round multipliers leave a pin");
    }
    for (size_t j = 0; j < active.size(); ++j) {
      if (sgn(solved.y[j]) > 0) {
        fixed.emplace_back(active[j], table.values[active[j]] + t);
        span.Insert(active[j]);
      }
    }
  }
  return x;
}

}  // namespace netbargain::oracle
