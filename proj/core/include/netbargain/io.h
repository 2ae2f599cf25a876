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


#ifndef NETBARGAIN_IO_H_
#define NETBARGAIN_IO_H_

#include <string>
#include <string_view>

#include "netbargain/model.h"

namespace netbargain {

// JSON instance documents:
//   {"mode": "ConstrainedBipartite",
//    "agents": [{"id": "b", "side": "B", "capacity": 2}, ...],
//    "edges": [{"u": "b", "v": "a1", "w": "3/2"}, ...]}
// Weights are "p/q" or integer strings (JSON integers are also accepted);
// decimals are rejected. Throws Error(kParseError) naming the line or field,
// and passes validation errors through. A run report is also accepted; its
// embedded "instance" is used.
InstanceDescription ParseInstanceDescription(std::string_view text);
Instance ParseInstance(std::string_view text);

// Canonical rendering; ParseInstance(SerializeInstance(i)) reproduces i.
std::string SerializeInstance(const Instance& inst);

// {"allocation": {"a": "1/3", ...}} or the bare inner object. Every agent must
// be present.
Allocation ParseAllocation(std::string_view text, const Instance& inst);
std::string SerializeAllocation(const Instance& inst, const Allocation& x);

}  // namespace netbargain

#endif  // NETBARGAIN_IO_H_
