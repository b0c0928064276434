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

#ifndef GROUPLOG_GROUP_HPP
#define GROUPLOG_GROUP_HPP

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "grouplog/bitset.hpp"
#include "grouplog/errors.hpp"

namespace grouplog {

// Dense Cayley-table model of a finite group.  Element 0 is always the
// identity; constructors and the file format enforce this.  Values are
// immutable after construction and safe to share across threads.
struct FiniteGroup {
  int order = 0;
  std::vector<int> op_table;   // row-major: op_table[a * order + b]
  std::vector<int> inv_table;  // inv_table[a]
  std::vector<std::string> labels;  // optional element names (empty or size order)
  std::string family_tag;           // optional provenance, e.g. "cyclic(8)"

  static constexpr int identity = 0;

  int op(int a, int b) const { return op_table[a * order + b]; }
  int inv(int a) const { return inv_table[a]; }
};

// Subset of a group's elements, kept as a dense bitset.
struct Subset {
  const FiniteGroup* parent = nullptr;
  DenseBitset members;

  Subset() = default;
  explicit Subset(const FiniteGroup& g)
      : parent(&g), members(static_cast<std::size_t>(g.order)) {}

  bool contains(int x) const { return members.test(static_cast<std::size_t>(x)); }
  void insert(int x) { members.set(static_cast<std::size_t>(x)); }
  std::size_t size() const { return members.count(); }
  std::vector<int> elements() const { return members.to_indices(); }
};

// One factor of a word in a presentation: generator index and a nonzero
// exponent.  Adjacent syllables of a normalized word have distinct
// generator indices.
struct Syllable {
  int gen = 0;
  long long exp = 0;
};

struct Word {
  std::vector<Syllable> syllables;
};

// Finite presentation: ngens generators, each relator a word asserted equal
// to the identity.
struct Presentation {
  int ngens = 0;
  std::vector<Word> relators;
};

// Family descriptor accepted by build_group.  `family` is one of: "cyclic",
// "abelian", "symmetric", "alternating", "dihedral", "quaternion8", "ut3".
// Direct products of already-built groups use direct_product below.
struct GroupDescriptor {
  std::string family;
  std::vector<long long> params;
};

inline constexpr int kDefaultOrderCap = 5040;       // largest constructible order (7!)
inline constexpr int kExhaustiveCheckCap = 512;     // full cubic axiom check below this
inline constexpr int kIsoOrderCap = 1024;           // isomorphism oracle cap

// --- Constructors --------------------------------------------------------

FiniteGroup cyclic_group(long long n, int order_cap = kDefaultOrderCap);
// Direct sum of cyclic groups of the given prime-power orders.
FiniteGroup abelian_group(const std::vector<long long>& prime_powers,
                          int order_cap = kDefaultOrderCap);
FiniteGroup symmetric_group(int n, int order_cap = kDefaultOrderCap);
FiniteGroup alternating_group(int n, int order_cap = kDefaultOrderCap);
FiniteGroup dihedral_group(int n, int order_cap = kDefaultOrderCap);
FiniteGroup quaternion_group();  // the order-8 quaternion group
// Upper unitriangular 3x3 matrices over Z_n; order n^3.  Element (u, v, w)
// is the matrix [[1, u, w], [0, 1, v], [0, 0, 1]], indexed u*n^2 + v*n + w.
FiniteGroup ut3_group(long long n, int order_cap = kDefaultOrderCap);
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b,
                           int order_cap = kDefaultOrderCap);

// Dispatch on a textual family descriptor (CLI surface).
FiniteGroup build_group(const GroupDescriptor& spec,
                        int order_cap = kDefaultOrderCap);

// Indices of the standard generators a = t12(1), b = t23(1) and the central
// generator c = t13(1) = [a, b] of ut3_group(n).
struct Ut3Generators {
  int a;
  int b;
  int c;
};
Ut3Generators ut3_standard_generators(long long n);

// --- Validation and serialization ----------------------------------------

// Checks identity / inverse / Latin-square axioms exhaustively and
// associativity exhaustively up to kExhaustiveCheckCap (random spot checks
// beyond).  Throws GroupError on violation.
void validate_group(const FiniteGroup& g);

// Cayley file format: line 1 is the decimal order m; lines 2..m+1 hold m
// space-separated element indices each (row a lists op[a][0..m-1]); index 0
// must be the identity; optional trailing lines "# label <i> <name>".
FiniteGroup load_cayley(std::string_view text);
std::string serialize_cayley(const FiniteGroup& g);

// Presentation file format: line 1 is ngens; each further line is one
// relator as space-separated tokens g<k>^<e>, e.g. "g0^2 g1^-3".
Presentation parse_presentation(std::string_view text);
std::string serialize_presentation(const Presentation& p);

// --- Algebraic utilities --------------------------------------------------

// x^n by binary exponentiation; negative n uses the inverse.
int power(const FiniteGroup& g, int x, long long n);

// [x, y] = x^-1 y^-1 x y.
int commutator(const FiniteGroup& g, int x, int y);

struct ClosureResult {
  Subset subgroup;
  int max_word_length = 0;  // maximum BFS depth; always <= |G|
};

// Closure of S united with {identity} under the group operation, by BFS over
// left-multiplication with S-elements and their inverses.
ClosureResult subgroup_closure(const FiniteGroup& g, const Subset& s);
ClosureResult subgroup_closure(const FiniteGroup& g,
                               const std::vector<int>& generators);

Subset center(const FiniteGroup& g);
Subset commutator_set(const FiniteGroup& g);
Subset derived_subgroup(const FiniteGroup& g);

int element_order(const FiniteGroup& g, int x);
std::map<int, int> order_profile(const FiniteGroup& g);

}  // namespace grouplog

#endif  // GROUPLOG_GROUP_HPP
