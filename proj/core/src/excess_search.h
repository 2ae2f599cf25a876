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

#ifndef NETBARGAIN_SRC_EXCESS_SEARCH_H_
#define NETBARGAIN_SRC_EXCESS_SEARCH_H_

// Maximum-excess coalition search shared by core and prekernel checks.

#include <vector>

#include "netbargain/model.h"

namespace netbargain::internal {

struct ExcessWitness {
  Coalition coalition;
  Rational excess;
};

// Excesses e(S) = v(S) - x(S) of all 2^n coalitions.
class ExcessTable {
 public:
  ExcessTable(const CharacteristicFunction& v, const Allocation& x);

  const Rational& operator[](Coalition s) const { return excess_[s.bits()]; }

  // Maximum over nonempty S with include ⊆ S and S ∩ exclude = ∅; ties go
  // to the smallest bitmask. Returns nullopt when no such S exists.
  std::optional<ExcessWitness> Max(Coalition include, Coalition exclude) const;

 private:
  int n_;
  std::vector<Rational> excess_;
};

// Same maximization for ConstrainedBipartite instances without enumerating
// coalitions: every coalition's value decomposes into stars centred on
// B-agents, so the search enumerates the set of centres and solves a
// bipartite assignment LP for each.
std::optional<ExcessWitness> MaxExcessStars(const Instance& inst, const Allocation& x,
                                            Coalition include, Coalition exclude);

}  // namespace netbargain::internal

#endif  // NETBARGAIN_SRC_EXCESS_SEARCH_H_
