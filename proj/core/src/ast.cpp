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

#include <cctype>
#include <optional>
#include <utility>

namespace grouplog {

// --- builders ----------------------------------------------------------------

namespace {

TermPtr make_term(TermKind kind, std::string var, TermPtr lhs, TermPtr rhs) {
  auto t = std::make_shared<Term>();
  t->kind = kind;
  t->var = std::move(var);
  t->lhs = std::move(lhs);
  t->rhs = std::move(rhs);
  return t;
}

FormulaPtr make_formula(FormulaKind kind, TermPtr t1, TermPtr t2, FormulaPtr f1,
                        FormulaPtr f2, std::string var) {
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  f->t1 = std::move(t1);
  f->t2 = std::move(t2);
  f->f1 = std::move(f1);
  f->f2 = std::move(f2);
  f->var = std::move(var);
  return f;
}

}  // namespace

TermPtr mk_var(std::string name) {
  return make_term(TermKind::kVar, std::move(name), nullptr, nullptr);
}

TermPtr mk_one() {
  static const TermPtr one = make_term(TermKind::kOne, "", nullptr, nullptr);
  return one;
}

TermPtr mk_inv(TermPtr t) {
  return make_term(TermKind::kInv, "", std::move(t), nullptr);
}

TermPtr mk_mul(TermPtr lhs, TermPtr rhs) {
  return make_term(TermKind::kMul, "", std::move(lhs), std::move(rhs));
}

FormulaPtr mk_eq(TermPtr t1, TermPtr t2) {
  return make_formula(FormulaKind::kEq, std::move(t1), std::move(t2), nullptr,
                      nullptr, "");
}

FormulaPtr mk_not(FormulaPtr f) {
  return make_formula(FormulaKind::kNot, nullptr, nullptr, std::move(f), nullptr,
                      "");
}

FormulaPtr mk_and(FormulaPtr f1, FormulaPtr f2) {
  return make_formula(FormulaKind::kAnd, nullptr, nullptr, std::move(f1),
                      std::move(f2), "");
}

FormulaPtr mk_or(FormulaPtr f1, FormulaPtr f2) {
  return make_formula(FormulaKind::kOr, nullptr, nullptr, std::move(f1),
                      std::move(f2), "");
}

FormulaPtr mk_imp(FormulaPtr f1, FormulaPtr f2) {
  return make_formula(FormulaKind::kImp, nullptr, nullptr, std::move(f1),
                      std::move(f2), "");
}

FormulaPtr mk_all(std::string var, FormulaPtr body) {
  return make_formula(FormulaKind::kAll, nullptr, nullptr, std::move(body),
                      nullptr, std::move(var));
}

FormulaPtr mk_ex(std::string var, FormulaPtr body) {
  return make_formula(FormulaKind::kEx, nullptr, nullptr, std::move(body),
                      nullptr, std::move(var));
}

FormulaPtr bigand(const std::vector<FormulaPtr>& fs) {
  if (fs.empty()) throw GroupError("bigand over an empty list");
  FormulaPtr acc = fs.back();
  for (auto it = fs.rbegin() + 1; it != fs.rend(); ++it) {
    acc = mk_and(*it, acc);
  }
  return acc;
}

FormulaPtr bigor(const std::vector<FormulaPtr>& fs) {
  if (fs.empty()) throw GroupError("bigor over an empty list");
  FormulaPtr acc = fs.back();
  for (auto it = fs.rbegin() + 1; it != fs.rend(); ++it) {
    acc = mk_or(*it, acc);
  }
  return acc;
}

TermPtr macro_commutator(TermPtr t1, TermPtr t2) {
  return mk_mul(mk_mul(mk_mul(mk_inv(t1), mk_inv(t2)), t1), t2);
}

// --- measurement ---------------------------------------------------------------

LengthCount length(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::kVar:
    case TermKind::kOne:
      return 1;
    case TermKind::kInv:
      return 1 + length(t->lhs);
    case TermKind::kMul:
      return 1 + length(t->lhs) + length(t->rhs);
  }
  return 0;  // unreachable
}

LengthCount length(const FormulaPtr& f) {
  switch (f->kind) {
    case FormulaKind::kEq:
      return 1 + length(f->t1) + length(f->t2);
    case FormulaKind::kNot:
      return 1 + length(f->f1);
    case FormulaKind::kAnd:
    case FormulaKind::kOr:
    case FormulaKind::kImp:
      return 1 + length(f->f1) + length(f->f2);
    case FormulaKind::kAll:
    case FormulaKind::kEx:
      return 2 + length(f->f1);
  }
  return 0;  // unreachable
}

// --- printing ---------------------------------------------------------------

namespace {

void print_term(const TermPtr& t, std::string& out) {
  switch (t->kind) {
    case TermKind::kVar:
      out += t->var;
      return;
    case TermKind::kOne:
      out += '1';
      return;
    case TermKind::kInv:
      out += "(inv ";
      print_term(t->lhs, out);
      out += ')';
      return;
    case TermKind::kMul:
      out += "(* ";
      print_term(t->lhs, out);
      out += ' ';
      print_term(t->rhs, out);
      out += ')';
      return;
  }
}

void print_formula(const FormulaPtr& f, std::string& out) {
  switch (f->kind) {
    case FormulaKind::kEq:
      out += "(= ";
      print_term(f->t1, out);
      out += ' ';
      print_term(f->t2, out);
      out += ')';
      return;
    case FormulaKind::kNot:
      out += "(not ";
      print_formula(f->f1, out);
      out += ')';
      return;
    case FormulaKind::kAnd:
    case FormulaKind::kOr:
    case FormulaKind::kImp: {
      out += f->kind == FormulaKind::kAnd ? "(and "
             : f->kind == FormulaKind::kOr ? "(or "
                                           : "(imp ";
      print_formula(f->f1, out);
      out += ' ';
      print_formula(f->f2, out);
      out += ')';
      return;
    }
    case FormulaKind::kAll:
    case FormulaKind::kEx:
      out += f->kind == FormulaKind::kAll ? "(all " : "(ex ";
      out += f->var;
      out += ' ';
      print_formula(f->f1, out);
      out += ')';
      return;
  }
}

}  // namespace

std::string print(const TermPtr& t) {
  std::string out;
  print_term(t, out);
  return out;
}

std::string print(const FormulaPtr& f) {
  std::string out;
  print_formula(f, out);
  return out;
}

// --- parsing ---------------------------------------------------------------

namespace {

struct Token {
  enum Kind { kLParen, kRParen, kAtom, kEnd } kind;
  std::string text;
  int line;
  int column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_space();
    if (pos_ >= text_.size()) return {Token::kEnd, "", line_, column_};
    const int line = line_, column = column_;
    const char c = text_[pos_];
    if (c == '(') {
      advance();
      return {Token::kLParen, "(", line, column};
    }
    if (c == ')') {
      advance();
      return {Token::kRParen, ")", line, column};
    }
    std::string atom;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '(' && text_[pos_] != ')') {
      atom += text_[pos_];
      advance();
    }
    return {Token::kAtom, atom, line, column};
  }

  Token peek() {
    if (!lookahead_) lookahead_ = next();
    return *lookahead_;
  }

  Token take() {
    if (lookahead_) {
      Token t = *lookahead_;
      lookahead_.reset();
      return t;
    }
    return next();
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      advance();
    }
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
  std::optional<Token> lookahead_;
};

bool valid_ident(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

[[noreturn]] void fail(const Token& at, const std::string& message) {
  throw ParseError(message, at.line, at.column);
}

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text) {}

  TermPtr term_document() {
    TermPtr t = term();
    expect_end();
    return t;
  }

  FormulaPtr formula_document() {
    FormulaPtr f = formula();
    expect_end();
    return f;
  }

 private:
  void expect_end() {
    const Token t = lex_.take();
    if (t.kind != Token::kEnd) fail(t, "trailing content after expression");
  }

  Token expect(Token::Kind kind, const std::string& what) {
    const Token t = lex_.take();
    if (t.kind != kind) fail(t, "expected " + what + ", got '" + t.text + "'");
    return t;
  }

  std::string ident() {
    const Token t = expect(Token::kAtom, "an identifier");
    if (!valid_ident(t.text)) fail(t, "invalid identifier '" + t.text + "'");
    return t.text;
  }

  TermPtr term() {
    const Token t = lex_.take();
    if (t.kind == Token::kAtom) {
      if (t.text == "1") return mk_one();
      if (!valid_ident(t.text)) fail(t, "invalid variable '" + t.text + "'");
      return mk_var(t.text);
    }
    if (t.kind != Token::kLParen) fail(t, "expected a term");
    const Token head = expect(Token::kAtom, "a term operator");
    if (head.text == "inv") {
      TermPtr sub = term();
      expect(Token::kRParen, "')'");
      return mk_inv(std::move(sub));
    }
    if (head.text == "*") {
      TermPtr lhs = term();
      TermPtr rhs = term();
      expect(Token::kRParen, "')'");
      return mk_mul(std::move(lhs), std::move(rhs));
    }
    fail(head, "unknown term operator '" + head.text + "'");
  }

  FormulaPtr formula() {
    const Token open = expect(Token::kLParen, "'('");
    (void)open;
    const Token head = expect(Token::kAtom, "a connective");
    if (head.text == "=") {
      TermPtr t1 = term();
      TermPtr t2 = term();
      expect(Token::kRParen, "')'");
      return mk_eq(std::move(t1), std::move(t2));
    }
    if (head.text == "not") {
      FormulaPtr f = formula();
      expect(Token::kRParen, "')'");
      return mk_not(std::move(f));
    }
    if (head.text == "and" || head.text == "or" || head.text == "imp") {
      FormulaPtr f1 = formula();
      FormulaPtr f2 = formula();
      expect(Token::kRParen, "')'");
      if (head.text == "and") return mk_and(std::move(f1), std::move(f2));
      if (head.text == "or") return mk_or(std::move(f1), std::move(f2));
      return mk_imp(std::move(f1), std::move(f2));
    }
    if (head.text == "all" || head.text == "ex") {
      std::string var = ident();
      FormulaPtr body = formula();
      expect(Token::kRParen, "')'");
      return head.text == "all" ? mk_all(std::move(var), std::move(body))
                                : mk_ex(std::move(var), std::move(body));
    }
    fail(head, "unknown connective '" + head.text + "'");
  }

  Lexer lex_;
};

}  // namespace

TermPtr parse_term(std::string_view text) { return Parser(text).term_document(); }

FormulaPtr parse_formula(std::string_view text) {
  return Parser(text).formula_document();
}

// --- queries ---------------------------------------------------------------

namespace {

void collect_term_vars(const TermPtr& t, std::set<std::string>& out) {
  switch (t->kind) {
    case TermKind::kVar:
      out.insert(t->var);
      return;
    case TermKind::kOne:
      return;
    case TermKind::kInv:
      collect_term_vars(t->lhs, out);
      return;
    case TermKind::kMul:
      collect_term_vars(t->lhs, out);
      collect_term_vars(t->rhs, out);
      return;
  }
}

void collect_free_vars(const FormulaPtr& f, std::set<std::string>& bound,
                       std::set<std::string>& out) {
  switch (f->kind) {
    case FormulaKind::kEq: {
      std::set<std::string> vars;
      collect_term_vars(f->t1, vars);
      collect_term_vars(f->t2, vars);
      for (const std::string& v : vars) {
        if (!bound.count(v)) out.insert(v);
      }
      return;
    }
    case FormulaKind::kNot:
      collect_free_vars(f->f1, bound, out);
      return;
    case FormulaKind::kAnd:
    case FormulaKind::kOr:
    case FormulaKind::kImp:
      collect_free_vars(f->f1, bound, out);
      collect_free_vars(f->f2, bound, out);
      return;
    case FormulaKind::kAll:
    case FormulaKind::kEx: {
      const bool was_bound = bound.count(f->var) > 0;
      bound.insert(f->var);
      collect_free_vars(f->f1, bound, out);
      if (!was_bound) bound.erase(f->var);
      return;
    }
  }
}

}  // namespace

std::set<std::string> free_vars(const TermPtr& t) {
  std::set<std::string> out;
  collect_term_vars(t, out);
  return out;
}

std::set<std::string> free_vars(const FormulaPtr& f) {
  std::set<std::string> bound, out;
  collect_free_vars(f, bound, out);
  return out;
}

bool is_sentence(const FormulaPtr& f) { return free_vars(f).empty(); }

bool equal(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TermKind::kVar:
      return a->var == b->var;
    case TermKind::kOne:
      return true;
    case TermKind::kInv:
      return equal(a->lhs, b->lhs);
    case TermKind::kMul:
      return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
  }
  return false;  // unreachable
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case FormulaKind::kEq:
      return equal(a->t1, b->t1) && equal(a->t2, b->t2);
    case FormulaKind::kNot:
      return equal(a->f1, b->f1);
    case FormulaKind::kAnd:
    case FormulaKind::kOr:
    case FormulaKind::kImp:
      return equal(a->f1, b->f1) && equal(a->f2, b->f2);
    case FormulaKind::kAll:
    case FormulaKind::kEx:
      return a->var == b->var && equal(a->f1, b->f1);
  }
  return false;  // unreachable
}

}  // namespace grouplog
