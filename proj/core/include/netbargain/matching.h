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

#ifndef NETBARGAIN_MATCHING_H_
#define NETBARGAIN_MATCHING_H_

// Maximum-weight b-matching: the LP relaxation with its dual prices, an
// exhaustive exact search, and the integrality-gap report that decides
// whether stable outcomes exist.

#include <vector>

#include "netbargain/model.h"
#include "netbargain/rational.h"

namespace netbargain {

inline constexpr int kDefaultExactEdgeLimit = 25;

// Optimum of  max sum_e w_e chi_e  s.t.  sum_{e at v} chi_e <= c_v (v in S),
// chi_e <= 1, chi_e >= 0  over the edges inside S. Vectors are indexed by
// instance agent/edge and are zero outside S.
struct LpRelaxation {
  Rational value;
  std::vector<Rational> primal;  // chi_e
  std::vector<Rational> y;       // capacity-row duals
  std::vector<Rational> z;       // chi_e <= 1 row duals
};

LpRelaxation BmatchingLp(const Instance& inst, Coalition s);

struct ExactMatching {
  Rational value;
  std::vector<EdgeIndex> edges;  // ascending
};

// Exact maximum-weight b-matching inside S. Among optimal matchings the
// lexicographically smallest ascending edge-index sequence is returned.
// Throws kTooLarge when S contains more than `edge_limit` edges.
ExactMatching BmatchingExact(const Instance& inst, Coalition s,
                             int edge_limit = kDefaultExactEdgeLimit);

struct IntegralityReport {
  Rational lp_value;
  Rational ip_value;
  std::vector<Rational> lp_primal;
  bool integral = false;  // lp_value == ip_value
  std::vector<Rational> y;
  std::vector<Rational> z;
  std::vector<EdgeIndex> ip_matching;
};

// Solves both sides over the grand coalition. When the instance is beyond
// `edge_limit` the report still succeeds if the LP vertex is itself integral.
IntegralityReport ComputeIntegralityReport(const Instance& inst,
                                           int edge_limit = kDefaultExactEdgeLimit);

}  // namespace netbargain

#endif  // NETBARGAIN_MATCHING_H_
