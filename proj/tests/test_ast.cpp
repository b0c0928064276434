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

#include "grouplog/ast.hpp"

#include <set>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "testutil.hpp"

namespace grouplog {
namespace {

TEST(Length, CountsTokens) {
  EXPECT_EQ(length(mk_eq(mk_var("x"), mk_one())), 3) << "=, x, 1";
  EXPECT_EQ(length(mk_ex("y", mk_eq(mk_var("y"), mk_var("x")))), 5)
      << "quantifier + bound variable + three-token equality";
  EXPECT_EQ(length(mk_inv(mk_var("x"))), 2);
  EXPECT_EQ(length(mk_mul(mk_var("x"), mk_one())), 3);
}

TEST(Length, ConnectivesAddOne) {
  testing::FormulaSource source(7);
  for (int i = 0; i < 50; ++i) {
    const FormulaPtr a = source.formula(3, 2);
    const FormulaPtr b = source.formula(3, 2);
    EXPECT_EQ(length(mk_and(a, b)), length(a) + length(b) + 1);
    EXPECT_EQ(length(mk_or(a, b)), length(a) + length(b) + 1);
    EXPECT_EQ(length(mk_imp(a, b)), length(a) + length(b) + 1);
    EXPECT_EQ(length(mk_not(a)), length(a) + 1);
    EXPECT_EQ(length(mk_all("q", a)), length(a) + 2);
  }
}

TEST(Length, CommutatorMacroIsNineTokens) {
  EXPECT_EQ(length(macro_commutator(mk_var("x"), mk_var("y"))), 9)
      << "three *, two inv, and four variable occurrences";
}

TEST(BigOps, FoldAndMeasure) {
  const FormulaPtr atom = mk_eq(mk_var("x"), mk_var("y"));  // length 3
  EXPECT_TRUE(equal(bigand({atom}), atom)) << "singleton fold is the identity";
  EXPECT_EQ(length(bigand({atom, atom, atom})), 11) << "3 atoms + 2 connectives";
  EXPECT_EQ(length(bigor({atom, atom, atom})), 11);
  EXPECT_THROW(bigand({}), GroupError);
  EXPECT_THROW(bigor({}), GroupError);

  // Right fold: the top node's left child is the first formula.
  const FormulaPtr folded = bigand({mk_eq(mk_var("a"), mk_one()), atom, atom});
  EXPECT_EQ(folded->kind, FormulaKind::kAnd);
  EXPECT_EQ(print(folded->f1), "(= a 1)");
}

TEST(Printing, CanonicalForms) {
  EXPECT_EQ(print(mk_eq(mk_var("x"), mk_one())), "(= x 1)");
  EXPECT_EQ(print(mk_inv(mk_mul(mk_var("x"), mk_var("y")))), "(inv (* x y))");
  const FormulaPtr f =
      mk_all("x", mk_ex("y", mk_eq(mk_mul(mk_var("x"), mk_var("y")), mk_one())));
  EXPECT_EQ(print(f), "(all x (ex y (= (* x y) 1)))");
  EXPECT_EQ(print(mk_imp(mk_eq(mk_var("x"), mk_one()),
                         mk_not(mk_eq(mk_var("y"), mk_one())))),
            "(imp (= x 1) (not (= y 1)))");
}

TEST(Parsing, AcceptsCanonicalAndLooseWhitespace) {
  const FormulaPtr f = parse_formula("(ex y (= (* x y) 1))");
  EXPECT_EQ(free_vars(f), (std::set<std::string>{"x"}));
  const FormulaPtr loose = parse_formula("  ( ex   y\n\t( =\n( * x y )   1 ) ) ");
  EXPECT_TRUE(equal(f, loose)) << "whitespace must not matter";
  EXPECT_EQ(print(loose), "(ex y (= (* x y) 1))") << "printer canonicalizes";
}

TEST(Parsing, Terms) {
  EXPECT_EQ(print(parse_term("(* (inv ab_2) 1)")), "(* (inv ab_2) 1)");
  EXPECT_EQ(parse_term("1")->kind, TermKind::kOne);
  EXPECT_EQ(parse_term("someVar")->kind, TermKind::kVar);
}

TEST(Parsing, ReportsPositions) {
  try {
    parse_formula("(and (= x 1) (= y 1)) junk");
    FAIL() << "trailing content must be rejected";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1);
    EXPECT_GT(e.column(), 20);
  }
  try {
    parse_formula("(all 9bad (= x 1))");
    FAIL() << "identifiers cannot start with a digit";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column(), 6);
  }
  EXPECT_THROW(parse_formula("(xor (= x 1) (= y 1))"), ParseError);
  EXPECT_THROW(parse_formula("(= x)"), ParseError);
  EXPECT_THROW(parse_formula(""), ParseError);
  EXPECT_THROW(parse_term("(inv x"), ParseError);
}

TEST(Parsing, RandomFormulasRoundTrip) {
  testing::FormulaSource source(20260814);
  for (int i = 0; i < 200; ++i) {
    const FormulaPtr f = source.formula(4, 3);
    const FormulaPtr reparsed = parse_formula(print(f));
    ASSERT_TRUE(equal(f, reparsed)) << "round-trip failed for: " << print(f);
  }
}

TEST(FreeVars, QuantifiersBind) {
  const FormulaPtr body = parse_formula("(= (* x y) z)");
  EXPECT_EQ(free_vars(body), (std::set<std::string>{"x", "y", "z"}));
  EXPECT_EQ(free_vars(mk_all("x", body)), (std::set<std::string>{"y", "z"}));
  EXPECT_EQ(free_vars(mk_all("x", mk_ex("y", mk_ex("z", body)))),
            std::set<std::string>{});
  EXPECT_TRUE(is_sentence(mk_all("x", mk_ex("y", mk_ex("z", body)))));

  // Shadowing: the inner binder hides the outer variable only inside.
  const FormulaPtr shadow =
      mk_and(mk_eq(mk_var("x"), mk_one()), mk_ex("x", mk_eq(mk_var("x"), mk_one())));
  EXPECT_EQ(free_vars(shadow), (std::set<std::string>{"x"}));
}

TEST(FreeVars, RandomizedBindingProperty) {
  testing::FormulaSource source(99);
  for (int i = 0; i < 100; ++i) {
    const FormulaPtr f = source.formula(3, 2);
    std::set<std::string> expect = free_vars(f);
    expect.erase("x");
    EXPECT_EQ(free_vars(mk_all("x", f)), expect);
  }
}

TEST(Equality, StructuralNotAlpha) {
  const FormulaPtr a = parse_formula("(ex y (= y x))");
  EXPECT_TRUE(equal(a, parse_formula("(ex y (= y x))")));
  EXPECT_FALSE(equal(a, parse_formula("(ex w (= w x))")))
      << "alpha-renamed formulas are structurally different";
  EXPECT_FALSE(equal(a, parse_formula("(ex y (= x y))")));
}

}  // namespace
}  // namespace grouplog
