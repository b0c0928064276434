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

#include <gtest/gtest.h>

#include <vector>

#include "grouplog/errors.hpp"
#include "grouplog/group.hpp"

namespace grouplog {
namespace {

// Every corpus entry here has order <= 64; the sweep tests run the oracle
// over all pairs.
std::vector<FiniteGroup> sweep_corpus() {
  std::vector<FiniteGroup> out;
  for (long long n : {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 16, 24, 27, 32, 64}) {
    out.push_back(cyclic_group(n));
  }
  out.push_back(abelian_group({2, 2}));
  out.push_back(abelian_group({2, 4}));
  out.push_back(abelian_group({2, 2, 2}));
  out.push_back(abelian_group({2, 2, 2, 2}));
  out.push_back(abelian_group({3, 3}));
  out.push_back(abelian_group({3, 3, 3}));
  out.push_back(abelian_group({9, 3}));
  for (int n : {3, 4, 5, 6, 7, 8}) out.push_back(dihedral_group(n));
  out.push_back(quaternion_group());
  out.push_back(symmetric_group(3));
  out.push_back(symmetric_group(4));
  out.push_back(alternating_group(4));
  out.push_back(alternating_group(5));
  out.push_back(ut3_group(2));
  out.push_back(ut3_group(3));
  out.push_back(ut3_group(4));
  out.push_back(direct_product(cyclic_group(2), symmetric_group(3)));
  out.push_back(direct_product(cyclic_group(2), quaternion_group()));
  return out;
}

void expect_valid_mapping(const FiniteGroup& g, const FiniteGroup& h,
                          const std::vector<int>& map) {
  ASSERT_EQ(static_cast<int>(map.size()), g.order);
  ASSERT_EQ(g.order, h.order);
  std::vector<char> hit(static_cast<std::size_t>(h.order), 0);
  for (int image : map) {
    ASSERT_GE(image, 0);
    ASSERT_LT(image, h.order);
    EXPECT_FALSE(hit[static_cast<std::size_t>(image)]) << "image repeated: " << image;
    hit[static_cast<std::size_t>(image)] = 1;
  }
  EXPECT_EQ(map[FiniteGroup::identity], FiniteGroup::identity);
  for (int a = 0; a < g.order; ++a) {
    for (int b = 0; b < g.order; ++b) {
      ASSERT_EQ(map[g.op(a, b)], h.op(map[a], map[b]))
          << "operation not preserved at (" << a << ", " << b << ")";
    }
  }
}

TEST(MinimalGeneratingSet, CyclicEightNeedsOneGenerator) {
  FiniteGroup g = cyclic_group(8);
  std::vector<int> gens = minimal_generating_set(g);
  ASSERT_EQ(gens.size(), 1u);
  EXPECT_EQ(gens[0], 1);  // smallest index among the order-8 elements
  EXPECT_EQ(element_order(g, gens[0]), 8);
}

TEST(MinimalGeneratingSet, KleinFourNeedsTwoGenerators) {
  FiniteGroup g = abelian_group({2, 2});
  std::vector<int> gens = minimal_generating_set(g);
  EXPECT_EQ(gens.size(), 2u);
  EXPECT_EQ(subgroup_closure(g, gens).subgroup.size(), 4u);
}

TEST(MinimalGeneratingSet, TrivialGroupNeedsNoGenerators) {
  EXPECT_TRUE(minimal_generating_set(cyclic_group(1)).empty());
}

TEST(MinimalGeneratingSet, GeneratesAndStaysLogarithmicOnCorpus) {
  for (const FiniteGroup& g : sweep_corpus()) {
    std::vector<int> gens = minimal_generating_set(g);
    EXPECT_EQ(subgroup_closure(g, gens).subgroup.size(),
              static_cast<std::size_t>(g.order))
        << g.family_tag;
    // Each greedy step at least doubles the subgroup, so 2^k <= |G|.
    if (g.order > 1) {
      EXPECT_LE(1LL << gens.size(), static_cast<long long>(g.order)) << g.family_tag;
    } else {
      EXPECT_TRUE(gens.empty());
    }
  }
}

TEST(IsoOracle, DistinctOrdersFailFast) {
  IsoResult r = isomorphic(cyclic_group(5), cyclic_group(7));
  EXPECT_FALSE(r.isomorphic);
  EXPECT_FALSE(r.mapping.has_value());
  ASSERT_TRUE(r.invariant_mismatch.has_value());
  EXPECT_EQ(*r.invariant_mismatch, "order");
}

TEST(IsoOracle, CyclicFourVersusKleinFour) {
  IsoResult r = isomorphic(cyclic_group(4), abelian_group({2, 2}));
  EXPECT_FALSE(r.isomorphic);
  ASSERT_TRUE(r.invariant_mismatch.has_value());
  EXPECT_EQ(*r.invariant_mismatch, "order_profile");
}

TEST(IsoOracle, QuaternionVersusDihedralFour) {
  // 6 elements of order 4 on one side, 2 on the other.
  IsoResult r = isomorphic(quaternion_group(), dihedral_group(4));
  EXPECT_FALSE(r.isomorphic);
  ASSERT_TRUE(r.invariant_mismatch.has_value());
  EXPECT_EQ(*r.invariant_mismatch, "order_profile");
}

TEST(IsoOracle, SymmetricThreeIsDihedralThree) {
  IsoResult r = isomorphic(symmetric_group(3), dihedral_group(3));
  EXPECT_TRUE(r.isomorphic);
  EXPECT_FALSE(r.invariant_mismatch.has_value());
  ASSERT_TRUE(r.mapping.has_value());
  expect_valid_mapping(symmetric_group(3), dihedral_group(3), *r.mapping);
}

TEST(IsoOracle, AlternatingThreeIsCyclicThree) {
  IsoResult r = isomorphic(alternating_group(3), cyclic_group(3));
  EXPECT_TRUE(r.isomorphic);
  ASSERT_TRUE(r.mapping.has_value());
  expect_valid_mapping(alternating_group(3), cyclic_group(3), *r.mapping);
}

TEST(IsoOracle, AbelianFactorsMatchDirectProduct) {
  FiniteGroup a = build_group({"abelian", {2, 4}});
  FiniteGroup b = direct_product(cyclic_group(2), cyclic_group(4));
  IsoResult r = isomorphic(a, b);
  EXPECT_TRUE(r.isomorphic);
  ASSERT_TRUE(r.mapping.has_value());
  expect_valid_mapping(a, b, *r.mapping);
}

TEST(IsoOracle, UnitriangularTwoIsDihedralFour) {
  IsoResult r = isomorphic(ut3_group(2), dihedral_group(4));
  EXPECT_TRUE(r.isomorphic);
  ASSERT_TRUE(r.mapping.has_value());
  expect_valid_mapping(ut3_group(2), dihedral_group(4), *r.mapping);
}

TEST(IsoOracle, DihedralSixIsTwoCrossSymmetricThree) {
  FiniteGroup a = dihedral_group(6);
  FiniteGroup b = direct_product(cyclic_group(2), symmetric_group(3));
  IsoResult r = isomorphic(a, b);
  EXPECT_TRUE(r.isomorphic);
  ASSERT_TRUE(r.mapping.has_value());
  expect_valid_mapping(a, b, *r.mapping);
}

TEST(IsoOracle, SameProfileStillSeparatedBySearch) {
  // Both groups of order 27 have 26 elements of order 3, so the cheap
  // invariants tie and full backtracking must run.
  FiniteGroup a = ut3_group(3);
  FiniteGroup b = abelian_group({3, 3, 3});
  EXPECT_EQ(order_profile(a), order_profile(b));
  IsoResult ab = isomorphic(a, b);
  EXPECT_FALSE(ab.isomorphic);
  EXPECT_FALSE(ab.invariant_mismatch.has_value());
  EXPECT_FALSE(ab.mapping.has_value());
  IsoResult ba = isomorphic(b, a);
  EXPECT_FALSE(ba.isomorphic);
  EXPECT_FALSE(ba.invariant_mismatch.has_value());
}

TEST(IsoOracle, ReflexiveOnCorpus) {
  for (const FiniteGroup& g : sweep_corpus()) {
    IsoResult r = isomorphic(g, g);
    EXPECT_TRUE(r.isomorphic) << g.family_tag;
    ASSERT_TRUE(r.mapping.has_value()) << g.family_tag;
    expect_valid_mapping(g, g, *r.mapping);
  }
}

TEST(IsoOracle, SymmetricOnCorpusPairs) {
  std::vector<FiniteGroup> corpus = sweep_corpus();
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    for (std::size_t j = i + 1; j < corpus.size(); ++j) {
      IsoResult ab = isomorphic(corpus[i], corpus[j]);
      IsoResult ba = isomorphic(corpus[j], corpus[i]);
      EXPECT_EQ(ab.isomorphic, ba.isomorphic)
          << corpus[i].family_tag << " vs " << corpus[j].family_tag;
      EXPECT_EQ(ab.invariant_mismatch.has_value(), ba.invariant_mismatch.has_value());
      if (ab.isomorphic) {
        expect_valid_mapping(corpus[i], corpus[j], *ab.mapping);
        expect_valid_mapping(corpus[j], corpus[i], *ba.mapping);
      }
    }
  }
}

TEST(IsoOracle, OrderCapEnforced) {
  FiniteGroup big = cyclic_group(1025);
  EXPECT_THROW(isomorphic(big, big), GroupError);
  EXPECT_THROW(isomorphic(big, cyclic_group(2)), GroupError);
}

TEST(IsoOracle, LargestSupportedOrderStillDecides) {
  FiniteGroup g = cyclic_group(1024);
  IsoResult r = isomorphic(g, g);
  EXPECT_TRUE(r.isomorphic);
  ASSERT_TRUE(r.mapping.has_value());
  EXPECT_EQ(r.mapping->size(), 1024u);
}

}  // namespace
}  // namespace grouplog
