// Copyright 2026 The grouplog Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GROUPLOG_ISO_HPP
#define GROUPLOG_ISO_HPP

#include <optional>
#include <string>
#include <vector>

#include "grouplog/group.hpp"

namespace grouplog {

struct IsoResult {
  bool isomorphic = false;
  // Image of each G-element in H; present iff isomorphic, and verified
  // exhaustively to be an operation-preserving bijection.
  std::optional<std::vector<int>> mapping;
  // Cheap-invariant reason when the search was skipped ("order",
  // "order_profile"); empty when full backtracking ran.
  std::optional<std::string> invariant_mismatch;
};

// Greedy: repeatedly adds the element that grows the closure the most
// (smallest index on ties) until the closure is the whole group.  The
// trivial group yields an empty list; result size <= log2 |G|.
std::vector<int> minimal_generating_set(const FiniteGroup& g);

// Exhaustive backtracking over images of minimal_generating_set(g),
// candidates filtered by element order and centralizer size, partial maps
// extended by closure consistency.  A true oracle for |G|, |H| <= 1024.
IsoResult isomorphic(const FiniteGroup& g, const FiniteGroup& h);

}  // namespace grouplog

#endif  // GROUPLOG_ISO_HPP
