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

#ifndef NETBARGAIN_NUCLEOLUS_H_
#define NETBARGAIN_NUCLEOLUS_H_

// The nucleolus: the imputation that lexicographically minimizes the
// non-increasingly sorted vector of coalition excesses e(S, x) = v(S) - x(S).
//
// Both solvers run the same sequence of linear programs (raise the smallest
// satisfaction x(S) - v(S) as far as possible, pin the coalitions that are
// tight on the whole optimal face, repeat until x is pinned). They differ in
// the coalition family the programs range over:
//
//  * NucleolusBruteforce uses every proper nonempty coalition, with v(S)
//    computed on demand; it is limited to 12 agents.
//  * NucleolusPruned, for ConstrainedBipartite instances, uses singletons and
//    stars {b} ∪ T (b a B-agent, T ⊆ N(b), |T| <= c_b). Every other
//    coalition's value splits into stars and singletons, so it never
//    determines the optimum. Star rows are generated on demand by an exact
//    separation routine.

#include <optional>
#include <span>
#include <vector>

#include "netbargain/model.h"

namespace netbargain {

inline constexpr int kBruteforceNucleolusLimit = 12;

struct ExcessRecord {
  Coalition coalition;
  Rational excess;
};

struct Level {
  Rational epsilon;               // optimal satisfaction of this round
  std::vector<Coalition> fixed;   // coalitions pinned at epsilon
};
using LevelSequence = std::vector<Level>;

struct NucleolusResult {
  Allocation allocation;
  LevelSequence levels;
  int lp_solves = 0;
  int rows_generated = 0;
};

// Throws kTooLarge beyond kBruteforceNucleolusLimit agents.
NucleolusResult NucleolusBruteforceDetailed(const Instance& inst);
Allocation NucleolusBruteforce(const Instance& inst);

// Throws kWrongMode unless the instance is ConstrainedBipartite.
NucleolusResult NucleolusPruned(const Instance& inst);

// Excesses over `family`, or over every proper nonempty coalition when no
// family is given (kTooLarge beyond kEnumerationLimit agents). Sorted by
// excess non-increasing, ties by ascending coalition bitmask.
std::vector<ExcessRecord> ExcessProfile(
    const Instance& inst, const Allocation& x,
    std::optional<std::span<const Coalition>> family = std::nullopt);

enum class Ordering { kLess, kEqual, kGreater };

// Lexicographic comparison of two sorted excess vectors; kLess means `p` is
// nucleolus-preferred. Throws kLengthMismatch.
Ordering LexCompare(std::span<const Rational> p, std::span<const Rational> q);
Ordering LexCompare(const std::vector<ExcessRecord>& p, const std::vector<ExcessRecord>& q);

}  // namespace netbargain

#endif  // NETBARGAIN_NUCLEOLUS_H_
