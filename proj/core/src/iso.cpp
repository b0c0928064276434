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

#include "grouplog/iso.hpp"

#include <cstddef>
#include <optional>
#include <utility>

#include "grouplog/errors.hpp"

namespace grouplog {

namespace {

// cent[a] = |{x : ax = xa}|, an isomorphism invariant of each element that
// survives any relabeling, so generator images must match on it.
std::vector<int> centralizer_sizes(const FiniteGroup& g) {
  std::vector<int> cent(g.order, 0);
  for (int a = 0; a < g.order; ++a) {
    for (int x = 0; x < g.order; ++x) {
      if (g.op(a, x) == g.op(x, a)) ++cent[a];
    }
  }
  return cent;
}

bool is_isomorphism(const FiniteGroup& g, const FiniteGroup& h,
                    const std::vector<int>& map) {
  std::vector<char> hit(h.order, 0);
  for (int image : map) {
    if (image < 0 || image >= h.order || hit[image]) return false;
    hit[image] = 1;
  }
  for (int a = 0; a < g.order; ++a) {
    for (int b = 0; b < g.order; ++b) {
      if (map[g.op(a, b)] != h.op(map[a], map[b])) return false;
    }
  }
  return true;
}

// Backtracking over images of a minimal generating set of G.  A partial map
// is grown to the closure of the assigned generators after every choice;
// any product or injectivity conflict prunes the branch immediately, so the
// search is exhaustive yet cheap on the desk-scale groups it serves.
class IsoSearch {
 public:
  IsoSearch(const FiniteGroup& g, const FiniteGroup& h)
      : g_(g), h_(h), map_(g.order, -1), used_(h.order, -1) {}

  std::optional<std::vector<int>> run() {
    gens_ = minimal_generating_set(g_);
    const std::vector<int> cent_g = centralizer_sizes(g_);
    const std::vector<int> cent_h = centralizer_sizes(h_);
    std::vector<int> ord_h(h_.order, 0);
    for (int e = 0; e < h_.order; ++e) ord_h[e] = element_order(h_, e);

    candidates_.resize(gens_.size());
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      const int want_order = element_order(g_, gens_[i]);
      const int want_cent = cent_g[gens_[i]];
      for (int e = 0; e < h_.order; ++e) {
        if (ord_h[e] == want_order && cent_h[e] == want_cent) {
          candidates_[i].push_back(e);
        }
      }
      if (candidates_[i].empty()) return std::nullopt;
    }

    define(FiniteGroup::identity, FiniteGroup::identity);
    if (!extend(0) || !dfs(0)) return std::nullopt;
    return map_;
  }

 private:
  bool dfs(std::size_t gi) {
    if (gi == gens_.size()) {
      // The generators span G, so a conflict-free assignment of all of them
      // has already forced an image for every element.
      return static_cast<int>(defined_.size()) == g_.order;
    }
    for (int image : candidates_[gi]) {
      if (used_[image] != -1) continue;
      const std::size_t mark = defined_.size();
      define(gens_[gi], image);
      if (extend(mark) && dfs(gi + 1)) return true;
      rollback(mark);
    }
    return false;
  }

  void define(int ge, int he) {
    map_[ge] = he;
    used_[he] = ge;
    defined_.push_back(ge);
  }

  void rollback(std::size_t mark) {
    while (defined_.size() > mark) {
      const int ge = defined_.back();
      defined_.pop_back();
      used_[map_[ge]] = -1;
      map_[ge] = -1;
    }
  }

  // Close the partial map under products.  Pairs drawn entirely from
  // defined_[0..from) were checked by earlier calls; everything that appends
  // during the sweep is revisited because the loop bound tracks the list.
  bool extend(std::size_t from) {
    for (std::size_t i = from; i < defined_.size(); ++i) {
      const int a = defined_[i];
      for (std::size_t j = 0; j <= i; ++j) {
        const int b = defined_[j];
        if (!require(g_.op(a, b), h_.op(map_[a], map_[b]))) return false;
        if (!require(g_.op(b, a), h_.op(map_[b], map_[a]))) return false;
      }
    }
    return true;
  }

  bool require(int ge, int he) {
    if (map_[ge] != -1) return map_[ge] == he;
    if (used_[he] != -1) return false;
    define(ge, he);
    return true;
  }

  const FiniteGroup& g_;
  const FiniteGroup& h_;
  std::vector<int> gens_;
  std::vector<std::vector<int>> candidates_;
  std::vector<int> map_;   // G element -> H element, -1 when unassigned
  std::vector<int> used_;  // H element -> G preimage, -1 when free
  std::vector<int> defined_;
};

}  // namespace

std::vector<int> minimal_generating_set(const FiniteGroup& g) {
  std::vector<int> gens;
  Subset reach = subgroup_closure(g, gens).subgroup;
  while (static_cast<int>(reach.size()) < g.order) {
    int best = -1;
    std::size_t best_size = 0;
    for (int e = 0; e < g.order; ++e) {
      if (reach.contains(e)) continue;
      gens.push_back(e);
      const std::size_t grown = subgroup_closure(g, gens).subgroup.size();
      gens.pop_back();
      if (grown > best_size) {
        best_size = grown;
        best = e;
      }
    }
    gens.push_back(best);
    reach = subgroup_closure(g, gens).subgroup;
  }
  return gens;
}

IsoResult isomorphic(const FiniteGroup& g, const FiniteGroup& h) {
  if (g.order > kIsoOrderCap || h.order > kIsoOrderCap) {
    throw GroupError("isomorphism oracle supports orders up to " +
                     std::to_string(kIsoOrderCap) + ", got " +
                     std::to_string(g.order) + " and " +
                     std::to_string(h.order));
  }
  IsoResult result;
  if (g.order != h.order) {
    result.invariant_mismatch = "order";
    return result;
  }
  if (order_profile(g) != order_profile(h)) {
    result.invariant_mismatch = "order_profile";
    return result;
  }
  std::optional<std::vector<int>> mapping = IsoSearch(g, h).run();
  if (!mapping.has_value()) return result;  // exhaustive search: truly not isomorphic
  if (!is_isomorphism(g, h, *mapping)) {
    throw GroupError("internal error: isomorphism search returned an invalid mapping");
  }
  result.isomorphic = true;
  result.mapping = std::move(*mapping);
  return result;
}

}  // namespace grouplog
