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

#include "grouplog/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace grouplog {

namespace {

// --- terms ------------------------------------------------------------------

int term_value(const FiniteGroup& g, const TermPtr& t, const Env& env) {
  switch (t->kind) {
    case TermKind::kOne:
      return FiniteGroup::identity;
    case TermKind::kVar: {
      auto it = env.find(t->var);
      if (it == env.end()) throw GroupError("unbound variable: " + t->var);
      return it->second;
    }
    case TermKind::kInv:
      return g.inv(term_value(g, t->lhs, env));
    case TermKind::kMul:
      return g.op(term_value(g, t->lhs, env), term_value(g, t->rhs, env));
  }
  throw GroupError("corrupt term node");
}

void collect_term_vars(const TermPtr& t, std::set<std::string>* out) {
  switch (t->kind) {
    case TermKind::kVar:
      out->insert(t->var);
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

std::set<std::string> term_vars(const TermPtr& t) {
  std::set<std::string> out;
  collect_term_vars(t, &out);
  return out;
}

bool term_ground(const TermPtr& t, const Env& env) {
  switch (t->kind) {
    case TermKind::kOne:
      return true;
    case TermKind::kVar:
      return env.count(t->var) != 0;
    case TermKind::kInv:
      return term_ground(t->lhs, env);
    case TermKind::kMul:
      return term_ground(t->lhs, env) && term_ground(t->rhs, env);
  }
  return false;
}

// Enumerates [0, m)^k assignments with the last coordinate varying fastest,
// so successive tuples are in ascending lexicographic order.
template <typename Fn>
void odometer(int m, int k, Fn fn) {
  std::vector<int> idx(static_cast<std::size_t>(k), 0);
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && ++idx[static_cast<std::size_t>(i)] == m) {
      idx[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) return;
  }
}

// --- canonical form for memoization ------------------------------------------
//
// Bound variables are renamed "!i" in binder pre-order, free variables bound
// by the environment are replaced by their value "#v", and the remaining free
// variables are renamed "%i" in first-occurrence order.  Two subformulas with
// the same canonical string denote the same relation over their columns.

struct CanonResult {
  std::string key;
  // actual name -> "%i" for every free variable not bound by the environment
  std::map<std::string, std::string> free_to_canon;
};

struct CanonState {
  const Env* env;
  std::map<std::string, std::string> bound;
  CanonResult* out;
  int next_bound = 0;
};

void canon_term(const TermPtr& t, CanonState* st) {
  switch (t->kind) {
    case TermKind::kOne:
      st->out->key += '1';
      return;
    case TermKind::kVar: {
      auto b = st->bound.find(t->var);
      if (b != st->bound.end()) {
        st->out->key += b->second;
        return;
      }
      auto e = st->env->find(t->var);
      if (e != st->env->end()) {
        st->out->key += '#';
        st->out->key += std::to_string(e->second);
        return;
      }
      auto [it, fresh] = st->out->free_to_canon.try_emplace(t->var, "");
      if (fresh) {
        it->second = "%" + std::to_string(st->out->free_to_canon.size() - 1);
      }
      st->out->key += it->second;
      return;
    }
    case TermKind::kInv:
      st->out->key += "(inv ";
      canon_term(t->lhs, st);
      st->out->key += ')';
      return;
    case TermKind::kMul:
      st->out->key += "(* ";
      canon_term(t->lhs, st);
      st->out->key += ' ';
      canon_term(t->rhs, st);
      st->out->key += ')';
      return;
  }
}

void canon_formula(const FormulaPtr& f, CanonState* st) {
  switch (f->kind) {
    case FormulaKind::kEq:
      st->out->key += "(= ";
      canon_term(f->t1, st);
      st->out->key += ' ';
      canon_term(f->t2, st);
      st->out->key += ')';
      return;
    case FormulaKind::kNot:
      st->out->key += "(not ";
      canon_formula(f->f1, st);
      st->out->key += ')';
      return;
    case FormulaKind::kAnd:
    case FormulaKind::kOr:
    case FormulaKind::kImp: {
      st->out->key += f->kind == FormulaKind::kAnd  ? "(and "
                      : f->kind == FormulaKind::kOr ? "(or "
                                                    : "(imp ";
      canon_formula(f->f1, st);
      st->out->key += ' ';
      canon_formula(f->f2, st);
      st->out->key += ')';
      return;
    }
    case FormulaKind::kAll:
    case FormulaKind::kEx: {
      std::string name = "!" + std::to_string(st->next_bound++);
      st->out->key += f->kind == FormulaKind::kAll ? "(all " : "(ex ";
      st->out->key += name;
      st->out->key += ' ';
      auto it = st->bound.find(f->var);
      bool had = it != st->bound.end();
      std::string saved = had ? it->second : std::string();
      st->bound[f->var] = name;
      canon_formula(f->f1, st);
      if (had) {
        st->bound[f->var] = saved;
      } else {
        st->bound.erase(f->var);
      }
      st->out->key += ')';
      return;
    }
  }
}

CanonResult canonicalize(const FormulaPtr& f, const Env& env) {
  CanonResult out;
  CanonState st;
  st.env = &env;
  st.out = &out;
  out.key.reserve(256);
  canon_formula(f, &st);
  return out;
}

// --- conjunct extraction ------------------------------------------------------

void conj_pos(const FormulaPtr& f, std::vector<FormulaPtr>* out);

// Appends conjuncts equivalent to the negation of f.
void conj_neg(const FormulaPtr& f, std::vector<FormulaPtr>* out) {
  switch (f->kind) {
    case FormulaKind::kOr:
      conj_neg(f->f1, out);
      conj_neg(f->f2, out);
      return;
    case FormulaKind::kImp:
      conj_pos(f->f1, out);
      conj_neg(f->f2, out);
      return;
    case FormulaKind::kNot:
      conj_pos(f->f1, out);
      return;
    default:
      out->push_back(mk_not(f));
      return;
  }
}

// Appends conjuncts equivalent to f itself.
void conj_pos(const FormulaPtr& f, std::vector<FormulaPtr>* out) {
  switch (f->kind) {
    case FormulaKind::kAnd:
      conj_pos(f->f1, out);
      conj_pos(f->f2, out);
      return;
    case FormulaKind::kNot:
      conj_neg(f->f1, out);
      return;
    default:
      out->push_back(f);
      return;
  }
}

void or_leaves(const FormulaPtr& f, std::vector<FormulaPtr>* out) {
  if (f->kind == FormulaKind::kOr) {
    or_leaves(f->f1, out);
    or_leaves(f->f2, out);
    return;
  }
  out->push_back(f);
}

// --- naive engine -------------------------------------------------------------

double naive_cost_walk(int m, const FormulaPtr& f, int depth) {
  double self = std::pow(static_cast<double>(m), static_cast<double>(depth));
  switch (f->kind) {
    case FormulaKind::kEq:
      return self;
    case FormulaKind::kNot:
      return self + naive_cost_walk(m, f->f1, depth);
    case FormulaKind::kAnd:
    case FormulaKind::kOr:
    case FormulaKind::kImp:
      return self + naive_cost_walk(m, f->f1, depth) +
             naive_cost_walk(m, f->f2, depth);
    case FormulaKind::kAll:
    case FormulaKind::kEx:
      return self + naive_cost_walk(m, f->f1, depth + 1);
  }
  return self;
}

bool naive_rec(const FiniteGroup& g, const FormulaPtr& f, Env& env,
               EvalStats* st) {
  ++st->nodes_visited;
  switch (f->kind) {
    case FormulaKind::kEq:
      return term_value(g, f->t1, env) == term_value(g, f->t2, env);
    case FormulaKind::kNot:
      return !naive_rec(g, f->f1, env, st);
    case FormulaKind::kAnd:
      return naive_rec(g, f->f1, env, st) && naive_rec(g, f->f2, env, st);
    case FormulaKind::kOr:
      return naive_rec(g, f->f1, env, st) || naive_rec(g, f->f2, env, st);
    case FormulaKind::kImp:
      return !naive_rec(g, f->f1, env, st) || naive_rec(g, f->f2, env, st);
    case FormulaKind::kAll:
    case FormulaKind::kEx: {
      auto it = env.find(f->var);
      bool had = it != env.end();
      int saved = had ? it->second : 0;
      bool all = f->kind == FormulaKind::kAll;
      bool result = all;
      for (int v = 0; v < g.order; ++v) {
        env[f->var] = v;
        bool b = naive_rec(g, f->f1, env, st);
        if (all && !b) {
          result = false;
          break;
        }
        if (!all && b) {
          result = true;
          break;
        }
      }
      if (had) {
        env[f->var] = saved;
      } else {
        env.erase(f->var);
      }
      return result;
    }
  }
  throw GroupError("corrupt formula node");
}

constexpr long long kFullScanCap = 1LL << 26;  // rows in any full-product scan

}  // namespace

// --- Relation -----------------------------------------------------------------

Relation::Relation(const FiniteGroup& g, std::vector<std::string> columns)
    : g_(&g), cols_(std::move(columns)) {
  std::sort(cols_.begin(), cols_.end());
  if (std::adjacent_find(cols_.begin(), cols_.end()) != cols_.end()) {
    throw GroupError("relation columns must be distinct");
  }
  if (cols_.size() > 4) {
    throw GroupError("relation arity exceeds the packed-row limit of 4");
  }
  dense_ = cols_.size() <= 2;
  if (dense_) {
    std::size_t universe = 1;
    for (std::size_t i = 0; i < cols_.size(); ++i) {
      universe *= static_cast<std::size_t>(g.order);
    }
    bits_ = DenseBitset(universe);
  }
}

Relation Relation::full(const FiniteGroup& g,
                        std::vector<std::string> columns) {
  Relation r(g, std::move(columns));
  if (r.dense_) {
    r.bits_.flip_all();
    return r;
  }
  long long universe = 1;
  for (int i = 0; i < r.arity(); ++i) universe *= g.order;
  if (universe > kFullScanCap) {
    throw GroupError("full relation too large to materialize");
  }
  odometer(g.order, r.arity(),
           [&](const std::vector<int>& row) { r.insert(row); });
  r.finish();
  return r;
}

long long Relation::size() const {
  if (dense_) return static_cast<long long>(bits_.count());
  return static_cast<long long>(packed_.size());
}

uint64_t Relation::dense_index(const std::vector<int>& row) const {
  uint64_t idx = 0;
  for (int v : row) idx = idx * static_cast<uint64_t>(g_->order) +
                          static_cast<uint64_t>(v);
  return idx;
}

uint64_t Relation::pack(const std::vector<int>& row) {
  if (row.size() > 4) throw GroupError("packed row arity exceeds 4");
  uint64_t p = 0;
  for (int v : row) p = (p << 16) | static_cast<uint64_t>(v & 0xffff);
  return p;
}

bool Relation::contains(const std::vector<int>& row) const {
  if (static_cast<int>(row.size()) != arity()) {
    throw GroupError("row arity mismatch in contains()");
  }
  if (dense_) return bits_.test(dense_index(row));
  if (!finished_) throw GroupError("contains() on an unfinished relation");
  return std::binary_search(packed_.begin(), packed_.end(), pack(row));
}

bool Relation::contains_packed(uint64_t packed) const {
  std::vector<int> row(static_cast<std::size_t>(arity()));
  for (int i = arity() - 1; i >= 0; --i) {
    row[static_cast<std::size_t>(i)] = static_cast<int>(packed & 0xffff);
    packed >>= 16;
  }
  return contains(row);
}

void Relation::insert(const std::vector<int>& row) {
  if (static_cast<int>(row.size()) != arity()) {
    throw GroupError("row arity mismatch in insert()");
  }
  if (dense_) {
    bits_.set(dense_index(row));
    return;
  }
  packed_.push_back(pack(row));
  finished_ = false;
}

void Relation::insert_packed(uint64_t packed) {
  if (dense_) {
    std::vector<int> row(static_cast<std::size_t>(arity()));
    for (int i = arity() - 1; i >= 0; --i) {
      row[static_cast<std::size_t>(i)] = static_cast<int>(packed & 0xffff);
      packed >>= 16;
    }
    bits_.set(dense_index(row));
    return;
  }
  packed_.push_back(packed);
  finished_ = false;
}

void Relation::finish() {
  if (dense_ || finished_) return;
  std::sort(packed_.begin(), packed_.end());
  packed_.erase(std::unique(packed_.begin(), packed_.end()), packed_.end());
  finished_ = true;
}

void Relation::for_each_row(
    const std::function<bool(const std::vector<int>&)>& fn) const {
  std::vector<int> row(static_cast<std::size_t>(arity()));
  if (dense_) {
    for (std::size_t idx = bits_.next(0); idx < bits_.size();
         idx = bits_.next(idx + 1)) {
      std::size_t rem = idx;
      for (int i = arity() - 1; i >= 0; --i) {
        row[static_cast<std::size_t>(i)] =
            static_cast<int>(rem % static_cast<std::size_t>(g_->order));
        rem /= static_cast<std::size_t>(g_->order);
      }
      if (!fn(row)) return;
    }
    return;
  }
  if (!finished_) throw GroupError("for_each_row() on an unfinished relation");
  for (uint64_t p : packed_) {
    uint64_t rem = p;
    for (int i = arity() - 1; i >= 0; --i) {
      row[static_cast<std::size_t>(i)] = static_cast<int>(rem & 0xffff);
      rem >>= 16;
    }
    if (!fn(row)) return;
  }
}

std::vector<std::vector<int>> Relation::rows() const {
  std::vector<std::vector<int>> out;
  for_each_row([&](const std::vector<int>& row) {
    out.push_back(row);
    return true;
  });
  return out;
}

void Relation::complement() {
  if (dense_) {
    bits_.flip_all();
    return;
  }
  if (!finished_) throw GroupError("complement() on an unfinished relation");
  long long universe = 1;
  for (int i = 0; i < arity(); ++i) universe *= g_->order;
  if (universe > kFullScanCap) {
    throw GroupError("complement of sparse relation too large");
  }
  std::vector<uint64_t> out;
  out.reserve(static_cast<std::size_t>(universe) - packed_.size());
  std::size_t pi = 0;
  odometer(g_->order, arity(), [&](const std::vector<int>& row) {
    uint64_t p = pack(row);
    if (pi < packed_.size() && packed_[pi] == p) {
      ++pi;
    } else {
      out.push_back(p);
    }
  });
  packed_ = std::move(out);
}

void Relation::intersect(const Relation& other) {
  if (cols_ != other.cols_) {
    throw GroupError("column mismatch in intersect()");
  }
  if (dense_) {
    bits_ &= other.bits_;
    return;
  }
  if (!finished_ || !other.finished_) {
    throw GroupError("intersect() on an unfinished relation");
  }
  std::vector<uint64_t> out;
  std::set_intersection(packed_.begin(), packed_.end(), other.packed_.begin(),
                        other.packed_.end(), std::back_inserter(out));
  packed_ = std::move(out);
}

void Relation::unite(const Relation& other) {
  if (cols_ != other.cols_) {
    throw GroupError("column mismatch in unite()");
  }
  if (dense_) {
    bits_ |= other.bits_;
    return;
  }
  if (!finished_ || !other.finished_) {
    throw GroupError("unite() on an unfinished relation");
  }
  std::vector<uint64_t> out;
  std::set_union(packed_.begin(), packed_.end(), other.packed_.begin(),
                 other.packed_.end(), std::back_inserter(out));
  packed_ = std::move(out);
}

Relation Relation::project_out(const std::string& column) const {
  auto it = std::find(cols_.begin(), cols_.end(), column);
  if (it == cols_.end()) {
    throw GroupError("project_out() of an absent column: " + column);
  }
  std::size_t drop = static_cast<std::size_t>(it - cols_.begin());
  std::vector<std::string> new_cols;
  for (std::size_t i = 0; i < cols_.size(); ++i) {
    if (i != drop) new_cols.push_back(cols_[i]);
  }
  Relation out(*g_, new_cols);
  std::vector<int> reduced(new_cols.size());
  for_each_row([&](const std::vector<int>& row) {
    std::size_t j = 0;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i != drop) reduced[j++] = row[i];
    }
    out.insert(reduced);
    return true;
  });
  out.finish();
  return out;
}

Relation Relation::expand(const FiniteGroup& g,
                          const std::vector<std::string>& columns) const {
  Relation out(g, columns);
  if (out.cols_ == cols_) {
    out = *this;
    return out;
  }
  std::vector<int> src_pos(out.cols_.size(), -1);
  std::vector<std::size_t> extra;
  for (std::size_t i = 0; i < out.cols_.size(); ++i) {
    auto it = std::find(cols_.begin(), cols_.end(), out.cols_[i]);
    if (it != cols_.end()) {
      src_pos[i] = static_cast<int>(it - cols_.begin());
    } else {
      extra.push_back(i);
    }
  }
  for (const auto& c : cols_) {
    if (std::find(out.cols_.begin(), out.cols_.end(), c) == out.cols_.end()) {
      throw GroupError("expand() target must be a column superset");
    }
  }
  double blow = static_cast<double>(size());
  for (std::size_t i = 0; i < extra.size(); ++i) blow *= g.order;
  if (blow > static_cast<double>(kFullScanCap)) {
    throw GroupError("expand() result too large");
  }
  std::vector<int> target(out.cols_.size(), 0);
  for_each_row([&](const std::vector<int>& row) {
    for (std::size_t i = 0; i < out.cols_.size(); ++i) {
      if (src_pos[i] >= 0) target[i] = row[static_cast<std::size_t>(src_pos[i])];
    }
    odometer(g.order, static_cast<int>(extra.size()),
             [&](const std::vector<int>& ext) {
               for (std::size_t i = 0; i < extra.size(); ++i) {
                 target[extra[i]] = ext[i];
               }
               out.insert(target);
             });
    return true;
  });
  out.finish();
  return out;
}

Relation Relation::rename(
    const std::map<std::string, std::string>& renaming) const {
  std::vector<std::string> new_names(cols_.size());
  for (std::size_t i = 0; i < cols_.size(); ++i) {
    auto it = renaming.find(cols_[i]);
    new_names[i] = it != renaming.end() ? it->second : cols_[i];
  }
  Relation out(*g_, new_names);
  // Position of each output column's source in the original row.
  std::vector<std::size_t> src(cols_.size());
  for (std::size_t i = 0; i < out.cols_.size(); ++i) {
    auto it = std::find(new_names.begin(), new_names.end(), out.cols_[i]);
    src[i] = static_cast<std::size_t>(it - new_names.begin());
  }
  bool identity_perm = true;
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (src[i] != i) identity_perm = false;
  }
  if (identity_perm) {
    out.bits_ = bits_;
    out.packed_ = packed_;
    out.finished_ = finished_;
    return out;
  }
  std::vector<int> target(cols_.size());
  for_each_row([&](const std::vector<int>& row) {
    for (std::size_t i = 0; i < target.size(); ++i) target[i] = row[src[i]];
    out.insert(target);
    return true;
  });
  out.finish();
  return out;
}

// --- budget and estimates -------------------------------------------------------

long long default_budget() {
  if (const char* s = std::getenv("GROUPLOG_BUDGET")) {
    char* end = nullptr;
    long long v = std::strtoll(s, &end, 10);
    if (end != s && v > 0) return v;
  }
  return 1'000'000'000LL;
}

double cost_estimate(const FiniteGroup& g, const FormulaPtr& f, EvalMode mode) {
  int m = g.order;
  if (mode == EvalMode::kNaive) return naive_cost_walk(m, f, 0);

  std::set<std::string> outer;
  FormulaPtr cur = f;
  while (cur->kind == FormulaKind::kEx && !outer.count(cur->var)) {
    outer.insert(cur->var);
    cur = cur->f1;
  }
  double total = std::pow(static_cast<double>(m),
                          std::min<std::size_t>(outer.size(), 4));
  std::unordered_set<std::string> seen;
  Env empty;
  std::function<void(const FormulaPtr&)> walk = [&](const FormulaPtr& node) {
    CanonResult cr = canonicalize(node, empty);
    if (seen.insert(std::move(cr.key)).second) {
      std::size_t k = 0;
      for (const auto& v : free_vars(node)) {
        if (!outer.count(v)) ++k;
      }
      total += std::pow(static_cast<double>(m), std::min<std::size_t>(k, 3));
    }
    switch (node->kind) {
      case FormulaKind::kEq:
        return;
      case FormulaKind::kNot:
      case FormulaKind::kAll:
      case FormulaKind::kEx:
        walk(node->f1);
        return;
      case FormulaKind::kAnd:
      case FormulaKind::kOr:
      case FormulaKind::kImp:
        walk(node->f1);
        walk(node->f2);
        return;
    }
  };
  walk(f);
  return total;
}

// --- the relational engine -------------------------------------------------------

namespace {

// Saves and restores one environment binding across a scope, so block
// variables may shadow outer bindings of the same name.
class ScopedBind {
 public:
  ScopedBind(Env& env, const std::string& name) : env_(env), name_(name) {
    auto it = env_.find(name_);
    had_ = it != env_.end();
    if (had_) old_ = it->second;
  }
  void set(int v) { env_[name_] = v; }
  ~ScopedBind() {
    if (had_) {
      env_[name_] = old_;
    } else {
      env_.erase(name_);
    }
  }
  ScopedBind(const ScopedBind&) = delete;
  ScopedBind& operator=(const ScopedBind&) = delete;

 private:
  Env& env_;
  std::string name_;
  bool had_ = false;
  int old_ = 0;
};

}  // namespace

class Evaluator {
 public:
  Evaluator(const FiniteGroup& g, const EvalOptions& opt, EvalStats* st)
      : g_(g), m_(g.order), opt_(opt), st_(st) {}

  std::shared_ptr<const Relation> relate(const FormulaPtr& f, const Env& env);
  bool geval(const FormulaPtr& f, Env& env);
  void solve(const FormulaPtr& f, GroundedResult* res);

 private:
  struct DeltaShape {
    int depth = 0;
    TermPtr subject;
    std::vector<TermPtr> params;
  };

  struct Conjunct {
    FormulaPtr f;
    int rank = 1;
  };

  // Shared state of one existential-block search.
  struct Block {
    std::vector<std::string> avars;  // columns first, then block variables
    std::vector<Conjunct> conjs;
    std::vector<char> applied;
    Env env;
    Relation* out = nullptr;  // nullptr: existence mode
    bool found = false;
    int nbound = 0;
  };

  // cached structural queries -----------------------------------------------
  const std::set<std::string>& free_of(const FormulaPtr& f);
  bool qfree(const FormulaPtr& f);
  int rank_of(const FormulaPtr& f);
  bool contains_generation_shape(const FormulaPtr& f);
  const std::optional<DeltaShape>& delta_of(const FormulaPtr& f);

  int unbound_count(const FormulaPtr& f, const Env& env);
  std::vector<std::string> unbound_list(const FormulaPtr& f, const Env& env);

  // relation construction ----------------------------------------------------
  Relation dispatch(const FormulaPtr& f, const Env& env,
                    const std::vector<std::string>& cols);
  std::optional<Relation> try_delta(const DeltaShape& ds, const Env& env,
                                    const std::vector<std::string>& cols);
  std::optional<Relation> try_image(const std::set<std::string>& xs,
                                    const FormulaPtr& body, const Env& env);
  std::optional<DenseBitset> image(const TermPtr& t, const Env& env);
  Relation eq_relation(const FormulaPtr& f, const Env& env,
                       const std::vector<std::string>& cols);
  Relation or_relation(const FormulaPtr& f, const Env& env,
                       const std::vector<std::string>& cols);
  Relation exists_relation(const FormulaPtr& f, const Env& env,
                           const std::vector<std::string>& cols);
  Relation forall_relation(const FormulaPtr& f, const Env& env,
                           const std::vector<std::string>& cols);
  Relation solve_block(const std::vector<std::string>& block_vars,
                       const std::vector<FormulaPtr>& conj_fs, const Env& env,
                       const std::vector<std::string>& cols);
  bool block_step(Block& b);

  const DenseBitset& delta_set(const std::vector<int>& params, int depth);
  void account(const Relation& r);
  void pin(const FormulaPtr& f) { pinned_.push_back(f); }

  const FiniteGroup& g_;
  int m_;
  EvalOptions opt_;
  EvalStats* st_;
  long long total_rows_ = 0;

  std::unordered_map<std::string, std::shared_ptr<const Relation>> memo_;
  std::map<std::vector<int>, std::vector<DenseBitset>> delta_sets_;
  std::unordered_map<const Formula*, std::set<std::string>> free_cache_;
  std::unordered_map<const Formula*, char> qfree_cache_;
  std::unordered_map<const Formula*, int> rank_cache_;
  std::unordered_map<const Formula*, std::optional<DeltaShape>> delta_cache_;
  std::vector<FormulaPtr> pinned_;
};

const std::set<std::string>& Evaluator::free_of(const FormulaPtr& f) {
  auto it = free_cache_.find(f.get());
  if (it != free_cache_.end()) return it->second;
  pin(f);
  return free_cache_.emplace(f.get(), free_vars(f)).first->second;
}

bool Evaluator::qfree(const FormulaPtr& f) {
  auto it = qfree_cache_.find(f.get());
  if (it != qfree_cache_.end()) return it->second != 0;
  bool r = true;
  switch (f->kind) {
    case FormulaKind::kEq:
      r = true;
      break;
    case FormulaKind::kNot:
      r = qfree(f->f1);
      break;
    case FormulaKind::kAnd:
    case FormulaKind::kOr:
    case FormulaKind::kImp:
      r = qfree(f->f1) && qfree(f->f2);
      break;
    case FormulaKind::kAll:
    case FormulaKind::kEx:
      r = false;
      break;
  }
  pin(f);
  qfree_cache_[f.get()] = r ? 1 : 0;
  return r;
}

bool Evaluator::contains_generation_shape(const FormulaPtr& f) {
  const auto& ds = delta_of(f);
  if (ds && ds->depth >= 1) return true;
  switch (f->kind) {
    case FormulaKind::kEq:
      return false;
    case FormulaKind::kNot:
    case FormulaKind::kAll:
    case FormulaKind::kEx:
      return contains_generation_shape(f->f1);
    case FormulaKind::kAnd:
    case FormulaKind::kOr:
    case FormulaKind::kImp:
      return contains_generation_shape(f->f1) ||
             contains_generation_shape(f->f2);
  }
  return false;
}

int Evaluator::rank_of(const FormulaPtr& f) {
  auto it = rank_cache_.find(f.get());
  if (it != rank_cache_.end()) return it->second;
  int r = qfree(f) ? 0 : (contains_generation_shape(f) ? 2 : 1);
  pin(f);
  rank_cache_[f.get()] = r;
  return r;
}

// Structural recognizer for generation towers:
//   depth 0: a disjunction of equations with a common subject whose last
//            disjunct equates the subject with the identity,
//   depth i: EX u EX v [subject = u*v AND ALL w [(w=u OR w=v) -> inner]]
//            where inner is the depth i-1 tower with subject w.
const std::optional<Evaluator::DeltaShape>& Evaluator::delta_of(
    const FormulaPtr& f) {
  auto it = delta_cache_.find(f.get());
  if (it != delta_cache_.end()) return it->second;
  pin(f);
  std::optional<DeltaShape> shape;

  if (f->kind == FormulaKind::kEq || f->kind == FormulaKind::kOr) {
    std::vector<FormulaPtr> leaves;
    or_leaves(f, &leaves);
    bool ok = !leaves.empty();
    for (const auto& leaf : leaves) {
      if (leaf->kind != FormulaKind::kEq) ok = false;
    }
    if (ok) {
      const TermPtr& subject = leaves.front()->t1;
      for (const auto& leaf : leaves) {
        if (!equal(leaf->t1, subject)) ok = false;
      }
      if (leaves.back()->t2->kind != TermKind::kOne) ok = false;
      if (ok) {
        DeltaShape ds;
        ds.depth = 0;
        ds.subject = subject;
        for (std::size_t i = 0; i + 1 < leaves.size(); ++i) {
          ds.params.push_back(leaves[i]->t2);
        }
        shape = std::move(ds);
      }
    }
  } else if (f->kind == FormulaKind::kEx && f->f1->kind == FormulaKind::kEx) {
    const std::string& u = f->var;
    const std::string& v = f->f1->var;
    const FormulaPtr& body = f->f1->f1;
    if (u != v && body->kind == FormulaKind::kAnd &&
        body->f1->kind == FormulaKind::kEq &&
        body->f2->kind == FormulaKind::kAll) {
      const FormulaPtr& eq = body->f1;
      const FormulaPtr& all = body->f2;
      const std::string& w = all->var;
      bool head_ok =
          eq->t2->kind == TermKind::kMul && eq->t2->lhs->kind == TermKind::kVar &&
          eq->t2->lhs->var == u && eq->t2->rhs->kind == TermKind::kVar &&
          eq->t2->rhs->var == v && w != u && w != v &&
          all->f1->kind == FormulaKind::kImp;
      if (head_ok) {
        const FormulaPtr& guard = all->f1->f1;
        auto is_eq_vv = [](const FormulaPtr& e, const std::string& a,
                           const std::string& b) {
          return e->kind == FormulaKind::kEq && e->t1->kind == TermKind::kVar &&
                 e->t1->var == a && e->t2->kind == TermKind::kVar &&
                 e->t2->var == b;
        };
        if (guard->kind == FormulaKind::kOr && is_eq_vv(guard->f1, w, u) &&
            is_eq_vv(guard->f2, w, v)) {
          const auto& inner = delta_of(all->f1->f2);
          if (inner && inner->subject->kind == TermKind::kVar &&
              inner->subject->var == w) {
            std::set<std::string> locals{u, v, w};
            auto clean = [&](const TermPtr& t) {
              for (const auto& name : term_vars(t)) {
                if (locals.count(name)) return false;
              }
              return true;
            };
            bool ok = clean(eq->t1);
            for (const auto& p : inner->params) {
              if (!clean(p)) ok = false;
            }
            if (ok) {
              DeltaShape ds;
              ds.depth = inner->depth + 1;
              ds.subject = eq->t1;
              ds.params = inner->params;
              shape = std::move(ds);
            }
          }
        }
      }
    }
  }
  return delta_cache_.emplace(f.get(), std::move(shape)).first->second;
}

int Evaluator::unbound_count(const FormulaPtr& f, const Env& env) {
  int n = 0;
  for (const auto& v : free_of(f)) {
    if (!env.count(v)) ++n;
  }
  return n;
}

std::vector<std::string> Evaluator::unbound_list(const FormulaPtr& f,
                                                 const Env& env) {
  std::vector<std::string> out;
  for (const auto& v : free_of(f)) {
    if (!env.count(v)) out.push_back(v);
  }
  return out;
}

void Evaluator::account(const Relation& r) {
  ++st_->relations_built;
  long long sz = r.size();
  if (sz > st_->max_relation_rows) st_->max_relation_rows = sz;
  total_rows_ += sz;
  if (total_rows_ > opt_.row_cap) {
    throw GroupError("materialized rows exceed the row cap");
  }
}

// Product-set doubling: layer 0 is the parameter set plus the identity,
// layer i+1 is the pointwise product of layer i with itself.  A depth-k
// generation tower holds exactly on layer k.
const DenseBitset& Evaluator::delta_set(const std::vector<int>& params,
                                        int depth) {
  auto& layers = delta_sets_[params];
  if (layers.empty()) {
    DenseBitset s(static_cast<std::size_t>(m_));
    s.set(FiniteGroup::identity);
    for (int v : params) s.set(static_cast<std::size_t>(v));
    layers.push_back(std::move(s));
  }
  while (static_cast<int>(layers.size()) <= depth) {
    const DenseBitset& prev = layers.back();
    if (layers.size() >= 2 && prev == layers[layers.size() - 2]) {
      layers.push_back(prev);  // fixpoint reached
      continue;
    }
    DenseBitset next(static_cast<std::size_t>(m_));
    for (std::size_t i = prev.next(0); i < prev.size(); i = prev.next(i + 1)) {
      for (std::size_t j = prev.next(0); j < prev.size();
           j = prev.next(j + 1)) {
        next.set(static_cast<std::size_t>(
            g_.op(static_cast<int>(i), static_cast<int>(j))));
      }
    }
    layers.push_back(std::move(next));
  }
  return layers[static_cast<std::size_t>(depth)];
}

bool Evaluator::geval(const FormulaPtr& f, Env& env) {
  ++st_->nodes_visited;
  switch (f->kind) {
    case FormulaKind::kEq:
      return term_value(g_, f->t1, env) == term_value(g_, f->t2, env);
    case FormulaKind::kNot:
      return !geval(f->f1, env);
    case FormulaKind::kAnd:
      return geval(f->f1, env) && geval(f->f2, env);
    case FormulaKind::kOr:
      return geval(f->f1, env) || geval(f->f2, env);
    case FormulaKind::kImp:
      return !geval(f->f1, env) || geval(f->f2, env);
    case FormulaKind::kAll:
    case FormulaKind::kEx:
      return relate(f, env)->contains({});
  }
  throw GroupError("corrupt formula node");
}

std::shared_ptr<const Relation> Evaluator::relate(const FormulaPtr& f,
                                                  const Env& env) {
  ++st_->nodes_visited;
  std::vector<std::string> cols;
  for (const auto& v : free_of(f)) {
    if (!env.count(v)) cols.push_back(v);
  }
  if (static_cast<int>(cols.size()) > opt_.arity_cap) {
    throw ArityError(print(f), static_cast<int>(cols.size()), opt_.arity_cap);
  }

  CanonResult cr = canonicalize(f, env);
  std::string actual_key = cr.key;
  actual_key += "||";
  for (const auto& c : cols) {
    actual_key += c;
    actual_key += ',';
  }
  if (auto it = memo_.find(actual_key); it != memo_.end()) return it->second;

  std::string canon_key = cr.key + "||#";
  if (auto it = memo_.find(canon_key); it != memo_.end()) {
    std::map<std::string, std::string> back;
    for (const auto& [actual, canon] : cr.free_to_canon) back[canon] = actual;
    auto renamed =
        std::make_shared<const Relation>(it->second->rename(back));
    memo_[actual_key] = renamed;
    return renamed;
  }

  Relation r = dispatch(f, env, cols);
  r.finish();
  account(r);
  auto sp = std::make_shared<const Relation>(std::move(r));
  memo_[actual_key] = sp;
  memo_[canon_key] = std::make_shared<const Relation>(
      sp->rename(cr.free_to_canon));
  return sp;
}

Relation Evaluator::dispatch(const FormulaPtr& f, const Env& env,
                             const std::vector<std::string>& cols) {
  const auto& ds = delta_of(f);
  if (ds) {
    if (auto r = try_delta(*ds, env, cols)) return std::move(*r);
  }
  switch (f->kind) {
    case FormulaKind::kEq:
      return eq_relation(f, env, cols);
    case FormulaKind::kNot: {
      Relation r = *relate(f->f1, env);
      r.complement();
      return r;
    }
    case FormulaKind::kAnd:
    case FormulaKind::kEx:
      return exists_relation(f, env, cols);
    case FormulaKind::kOr:
    case FormulaKind::kImp:
      return or_relation(f, env, cols);
    case FormulaKind::kAll:
      return forall_relation(f, env, cols);
  }
  throw GroupError("corrupt formula node");
}

std::optional<Relation> Evaluator::try_delta(
    const DeltaShape& ds, const Env& env,
    const std::vector<std::string>& cols) {
  std::vector<int> values;
  const TermPtr* loose = nullptr;
  for (const auto& p : ds.params) {
    if (term_ground(p, env)) {
      values.push_back(term_value(g_, p, env));
    } else if (loose == nullptr && p->kind == TermKind::kVar) {
      loose = &p;
    } else {
      return std::nullopt;
    }
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  if (loose == nullptr) {
    if (term_ground(ds.subject, env)) {
      int sval = term_value(g_, ds.subject, env);
      Relation r(g_, {});
      if (delta_set(values, ds.depth).test(static_cast<std::size_t>(sval))) {
        r.insert({});
      }
      return r;
    }
    if (ds.subject->kind == TermKind::kVar && cols.size() == 1 &&
        cols[0] == ds.subject->var) {
      Relation r(g_, cols);
      const DenseBitset& s = delta_set(values, ds.depth);
      for (std::size_t i = s.next(0); i < s.size(); i = s.next(i + 1)) {
        r.insert({static_cast<int>(i)});
      }
      return r;
    }
    return std::nullopt;
  }

  // One generator position is an unbound variable: solve for it pointwise.
  if (!term_ground(ds.subject, env) || cols.size() != 1 ||
      cols[0] != (*loose)->var) {
    return std::nullopt;
  }
  int sval = term_value(g_, ds.subject, env);
  Relation r(g_, cols);
  for (int v = 0; v < m_; ++v) {
    std::vector<int> vv = values;
    vv.push_back(v);
    std::sort(vv.begin(), vv.end());
    vv.erase(std::unique(vv.begin(), vv.end()), vv.end());
    if (delta_set(vv, ds.depth).test(static_cast<std::size_t>(sval))) {
      r.insert({v});
    }
  }
  return r;
}

Relation Evaluator::eq_relation(const FormulaPtr& f, const Env& env,
                                const std::vector<std::string>& cols) {
  Relation r(g_, cols);
  if (cols.empty()) {
    if (term_value(g_, f->t1, env) == term_value(g_, f->t2, env)) r.insert({});
    return r;
  }

  // Functional orientation: a bare unbound variable on one side determined by
  // enumerating the other side's unbound variables.
  auto try_fun = [&](const TermPtr& a, const TermPtr& b) -> bool {
    if (a->kind != TermKind::kVar || env.count(a->var)) return false;
    std::set<std::string> bv = term_vars(b);
    if (bv.count(a->var)) return false;
    std::vector<std::string> others;
    for (const auto& v : bv) {
      if (!env.count(v)) others.push_back(v);
    }
    double work = std::pow(static_cast<double>(m_),
                           static_cast<double>(others.size()));
    if (work > static_cast<double>(kFullScanCap)) return false;
    std::size_t apos = 0;
    while (cols[apos] != a->var) ++apos;
    std::vector<std::size_t> opos(others.size());
    for (std::size_t i = 0; i < others.size(); ++i) {
      opos[i] = static_cast<std::size_t>(
          std::find(cols.begin(), cols.end(), others[i]) - cols.begin());
    }
    Env e2 = env;
    std::vector<int> row(cols.size(), 0);
    odometer(m_, static_cast<int>(others.size()),
             [&](const std::vector<int>& vals) {
               for (std::size_t i = 0; i < others.size(); ++i) {
                 e2[others[i]] = vals[i];
                 row[opos[i]] = vals[i];
               }
               row[apos] = term_value(g_, b, e2);
               r.insert(row);
             });
    return true;
  };
  if (try_fun(f->t1, f->t2) || try_fun(f->t2, f->t1)) {
    r.finish();
    return r;
  }

  double work =
      std::pow(static_cast<double>(m_), static_cast<double>(cols.size()));
  if (work > static_cast<double>(kFullScanCap)) {
    throw GroupError("equation scan too large: " + print(f));
  }
  Env e2 = env;
  odometer(m_, static_cast<int>(cols.size()), [&](const std::vector<int>& vals) {
    for (std::size_t i = 0; i < cols.size(); ++i) e2[cols[i]] = vals[i];
    if (term_value(g_, f->t1, e2) == term_value(g_, f->t2, e2)) r.insert(vals);
  });
  return r;
}

Relation Evaluator::or_relation(const FormulaPtr& f, const Env& env,
                                const std::vector<std::string>& cols) {
  Relation a = relate(f->f1, env)->expand(g_, cols);
  if (f->kind == FormulaKind::kImp) a.complement();
  Relation b = relate(f->f2, env)->expand(g_, cols);
  a.finish();
  b.finish();
  a.unite(b);
  return a;
}

Relation Evaluator::exists_relation(const FormulaPtr& f, const Env& env,
                                    const std::vector<std::string>& cols) {
  std::vector<std::string> block;
  std::set<std::string> block_set;
  FormulaPtr cur = f;
  while (cur->kind == FormulaKind::kEx && !block_set.count(cur->var)) {
    block.push_back(cur->var);
    block_set.insert(cur->var);
    cur = cur->f1;
  }
  std::vector<FormulaPtr> conjs;
  conj_pos(cur, &conjs);

  // Absorb existential conjuncts whose bound variable is fresh for the whole
  // block; chained absorption flattens nested witnesses into one search.
  std::set<std::string> col_set(cols.begin(), cols.end());
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < conjs.size() && !changed; ++i) {
      const FormulaPtr& c = conjs[i];
      if (c->kind != FormulaKind::kEx) continue;
      const std::string& w = c->var;
      if (block_set.count(w) || col_set.count(w) || env.count(w)) continue;
      bool fresh = true;
      for (std::size_t j = 0; j < conjs.size(); ++j) {
        if (j != i && free_of(conjs[j]).count(w)) fresh = false;
      }
      if (!fresh) continue;
      block.push_back(w);
      block_set.insert(w);
      std::vector<FormulaPtr> expanded;
      conj_pos(c->f1, &expanded);
      conjs.erase(conjs.begin() + static_cast<std::ptrdiff_t>(i));
      conjs.insert(conjs.end(), expanded.begin(), expanded.end());
      changed = true;
    }
  }
  return solve_block(block, conjs, env, cols);
}

Relation Evaluator::forall_relation(const FormulaPtr& f, const Env& env,
                                    const std::vector<std::string>& cols) {
  std::vector<std::string> xs;
  std::set<std::string> xset;
  FormulaPtr cur = f;
  while (cur->kind == FormulaKind::kAll && !xset.count(cur->var)) {
    xs.push_back(cur->var);
    xset.insert(cur->var);
    cur = cur->f1;
  }

  std::vector<FormulaPtr> parts;
  conj_pos(cur, &parts);
  if (parts.size() > 1) {
    // The universal block distributes over the conjunction; each piece keeps
    // only the quantifiers its free variables need, maximizing memo sharing.
    std::optional<Relation> acc;
    for (const auto& part : parts) {
      FormulaPtr wrapped = part;
      for (auto it = xs.rbegin(); it != xs.rend(); ++it) {
        if (free_of(part).count(*it)) wrapped = mk_all(*it, wrapped);
      }
      Relation piece = relate(wrapped, env)->expand(g_, cols);
      piece.finish();
      if (!acc) {
        acc = std::move(piece);
      } else {
        acc->intersect(piece);
      }
    }
    return std::move(*acc);
  }

  if (cols.empty()) {
    if (auto img = try_image(xset, cur, env)) return std::move(*img);
  }

  std::vector<FormulaPtr> conjs;
  conj_neg(cur, &conjs);
  Relation counter = solve_block(xs, conjs, env, cols);
  counter.complement();
  return counter;
}

// Recognizes ALL x... EX y... [t1(x) = t2(y)] as an image inclusion and
// decides it by comparing the two value sets instead of nested search.
std::optional<Relation> Evaluator::try_image(const std::set<std::string>& xs,
                                             const FormulaPtr& body,
                                             const Env& env) {
  std::set<std::string> ys;
  FormulaPtr cur = body;
  while (cur->kind == FormulaKind::kEx && !ys.count(cur->var) &&
         !xs.count(cur->var)) {
    ys.insert(cur->var);
    cur = cur->f1;
  }
  if (cur->kind != FormulaKind::kEq) return std::nullopt;
  Env masked = env;  // quantified names shadow ambient bindings
  for (const auto& v : xs) masked.erase(v);
  for (const auto& v : ys) masked.erase(v);
  std::set<std::string> v1 = term_vars(cur->t1);
  std::set<std::string> v2 = term_vars(cur->t2);
  for (const auto& v : v1) {
    if (ys.count(v)) return std::nullopt;
    if (!xs.count(v) && !masked.count(v)) return std::nullopt;
  }
  for (const auto& v : v2) {
    if (xs.count(v)) return std::nullopt;
    if (!ys.count(v) && !masked.count(v)) return std::nullopt;
  }
  auto img1 = image(cur->t1, masked);
  if (!img1) return std::nullopt;
  auto img2 = image(cur->t2, masked);
  if (!img2) return std::nullopt;
  Relation r(g_, {});
  if (img1->is_subset_of(*img2)) r.insert({});
  return r;
}

std::optional<DenseBitset> Evaluator::image(const TermPtr& t, const Env& env) {
  std::vector<std::string> unbound;
  for (const auto& v : term_vars(t)) {
    if (!env.count(v)) unbound.push_back(v);
  }
  DenseBitset out(static_cast<std::size_t>(m_));
  if (unbound.size() <= 2) {
    Env e2 = env;
    odometer(m_, static_cast<int>(unbound.size()),
             [&](const std::vector<int>& vals) {
               for (std::size_t i = 0; i < unbound.size(); ++i) {
                 e2[unbound[i]] = vals[i];
               }
               out.set(static_cast<std::size_t>(term_value(g_, t, e2)));
             });
    return out;
  }
  if (t->kind == TermKind::kInv) {
    auto sub = image(t->lhs, env);
    if (!sub) return std::nullopt;
    for (std::size_t i = sub->next(0); i < sub->size(); i = sub->next(i + 1)) {
      out.set(static_cast<std::size_t>(g_.inv(static_cast<int>(i))));
    }
    return out;
  }
  if (t->kind == TermKind::kMul) {
    std::set<std::string> lv = term_vars(t->lhs);
    std::set<std::string> rv = term_vars(t->rhs);
    for (const auto& v : lv) {
      if (rv.count(v) && !env.count(v)) return std::nullopt;
    }
    auto li = image(t->lhs, env);
    if (!li) return std::nullopt;
    auto ri = image(t->rhs, env);
    if (!ri) return std::nullopt;
    for (std::size_t i = li->next(0); i < li->size(); i = li->next(i + 1)) {
      for (std::size_t j = ri->next(0); j < ri->size(); j = ri->next(j + 1)) {
        out.set(static_cast<std::size_t>(
            g_.op(static_cast<int>(i), static_cast<int>(j))));
      }
    }
    return out;
  }
  return std::nullopt;
}

Relation Evaluator::solve_block(const std::vector<std::string>& block_vars,
                                const std::vector<FormulaPtr>& conj_fs,
                                const Env& env,
                                const std::vector<std::string>& cols) {
  Block b;
  b.avars = cols;
  for (const auto& v : block_vars) b.avars.push_back(v);
  for (const auto& cf : conj_fs) b.conjs.push_back({cf, rank_of(cf)});
  b.applied.assign(b.conjs.size(), 0);
  b.env = env;
  // Block variables shadow ambient bindings of the same name: every
  // occurrence inside the flattened conjuncts refers to the block variable.
  for (const auto& v : block_vars) b.env.erase(v);
  Relation out(g_, cols);
  b.out = cols.empty() ? nullptr : &out;
  block_step(b);
  if (cols.empty() && b.found) out.insert({});
  out.finish();
  return out;
}

// One node of the block search: apply every newly decidable conjunct as a
// filter, then extend the assignment by the cheapest available strategy.
bool Evaluator::block_step(Block& b) {
  ++st_->nodes_visited;

  std::vector<int> ready;
  for (std::size_t i = 0; i < b.conjs.size(); ++i) {
    if (!b.applied[i] && unbound_count(b.conjs[i].f, b.env) == 0) {
      ready.push_back(static_cast<int>(i));
    }
  }
  std::sort(ready.begin(), ready.end(), [&](int a, int c) {
    if (b.conjs[static_cast<std::size_t>(a)].rank !=
        b.conjs[static_cast<std::size_t>(c)].rank) {
      return b.conjs[static_cast<std::size_t>(a)].rank <
             b.conjs[static_cast<std::size_t>(c)].rank;
    }
    return a < c;
  });
  for (int i : ready) b.applied[static_cast<std::size_t>(i)] = 1;
  bool ok = true;
  for (int i : ready) {
    if (!geval(b.conjs[static_cast<std::size_t>(i)].f, b.env)) {
      ok = false;
      break;
    }
  }

  bool stop = false;
  if (ok) {
    if (b.nbound == static_cast<int>(b.avars.size())) {
      if (b.out) {
        std::vector<int> row;
        row.reserve(b.out->columns().size());
        for (const auto& c : b.out->columns()) row.push_back(b.env.at(c));
        b.out->insert(row);
      } else {
        b.found = true;
        stop = true;
      }
    } else {
      stop = [&]() -> bool {
        // (1) functional extension from an equation
        for (std::size_t i = 0; i < b.conjs.size(); ++i) {
          if (b.applied[i] || b.conjs[i].f->kind != FormulaKind::kEq) continue;
          const FormulaPtr& cf = b.conjs[i].f;
          for (int side = 0; side < 2; ++side) {
            const TermPtr& a = side == 0 ? cf->t1 : cf->t2;
            const TermPtr& t = side == 0 ? cf->t2 : cf->t1;
            if (a->kind != TermKind::kVar || b.env.count(a->var)) continue;
            if (!term_ground(t, b.env)) continue;
            if (term_vars(t).count(a->var)) continue;
            int val = term_value(g_, t, b.env);
            b.applied[i] = 1;
            ScopedBind bind(b.env, a->var);
            bind.set(val);
            ++b.nbound;
            bool s = block_step(b);
            --b.nbound;
            b.applied[i] = 0;
            return s;
          }
        }
        // (2) a single-variable conjunct restricts its variable's domain
        int pick = -1;
        for (std::size_t i = 0; i < b.conjs.size(); ++i) {
          if (b.applied[i]) continue;
          if (unbound_count(b.conjs[i].f, b.env) != 1) continue;
          if (pick < 0 ||
              b.conjs[i].rank < b.conjs[static_cast<std::size_t>(pick)].rank) {
            pick = static_cast<int>(i);
          }
        }
        if (pick >= 0) {
          const FormulaPtr& cf = b.conjs[static_cast<std::size_t>(pick)].f;
          std::string var = unbound_list(cf, b.env)[0];
          auto rel = relate(cf, b.env);
          b.applied[static_cast<std::size_t>(pick)] = 1;
          ScopedBind bind(b.env, var);
          bool s = false;
          rel->for_each_row([&](const std::vector<int>& row) {
            bind.set(row[0]);
            ++b.nbound;
            s = block_step(b);
            --b.nbound;
            return !s;
          });
          b.applied[static_cast<std::size_t>(pick)] = 0;
          return s;
        }
        // (3) iterate the rows of the smallest-arity materializable conjunct;
        // negations and disjunctions rank last since their relations are
        // near-complements of the full product.
        pick = -1;
        auto wide = [](const FormulaPtr& cf) {
          return cf->kind == FormulaKind::kNot ||
                 cf->kind == FormulaKind::kOr ||
                 cf->kind == FormulaKind::kImp;
        };
        std::tuple<bool, int, int> pick_cost{};
        for (std::size_t i = 0; i < b.conjs.size(); ++i) {
          if (b.applied[i]) continue;
          int k = unbound_count(b.conjs[i].f, b.env);
          if (k < 1 || k > opt_.arity_cap) continue;
          std::tuple<bool, int, int> cost{wide(b.conjs[i].f), b.conjs[i].rank,
                                          k};
          if (pick < 0 || cost < pick_cost) {
            pick = static_cast<int>(i);
            pick_cost = cost;
          }
        }
        if (pick >= 0) {
          const FormulaPtr& cf = b.conjs[static_cast<std::size_t>(pick)].f;
          auto rel = relate(cf, b.env);
          const auto& rcols = rel->columns();
          b.applied[static_cast<std::size_t>(pick)] = 1;
          std::vector<std::unique_ptr<ScopedBind>> binds;
          binds.reserve(rcols.size());
          for (const auto& c : rcols) {
            binds.push_back(std::make_unique<ScopedBind>(b.env, c));
          }
          bool s = false;
          rel->for_each_row([&](const std::vector<int>& row) {
            for (std::size_t i = 0; i < rcols.size(); ++i) {
              binds[i]->set(row[i]);
            }
            b.nbound += static_cast<int>(rcols.size());
            s = block_step(b);
            b.nbound -= static_cast<int>(rcols.size());
            return !s;
          });
          b.applied[static_cast<std::size_t>(pick)] = 0;
          return s;
        }
        // (4) enumerate the first unbound variable
        for (const auto& v : b.avars) {
          if (b.env.count(v)) continue;
          ScopedBind bind(b.env, v);
          for (int val = 0; val < m_; ++val) {
            bind.set(val);
            ++b.nbound;
            bool s = block_step(b);
            --b.nbound;
            if (s) return true;
          }
          return false;
        }
        return false;
      }();
    }
  }

  for (int i : ready) b.applied[static_cast<std::size_t>(i)] = 0;
  return stop;
}

void Evaluator::solve(const FormulaPtr& f, GroundedResult* res) {
  std::vector<std::string> block;
  std::set<std::string> block_set;
  FormulaPtr cur = f;
  while (cur->kind == FormulaKind::kEx && !block_set.count(cur->var)) {
    block.push_back(cur->var);
    block_set.insert(cur->var);
    cur = cur->f1;
  }
  if (block.empty()) {
    res->satisfied = relate(f, {})->contains({});
    return;
  }

  std::vector<Conjunct> conjs;
  {
    std::vector<FormulaPtr> fs;
    conj_pos(cur, &fs);
    for (const auto& cf : fs) conjs.push_back({cf, rank_of(cf)});
  }

  // Single-variable conjuncts become candidate domains for their variable
  // instead of post-hoc filters.
  std::vector<std::vector<int>> domain(block.size());
  std::vector<char> consumed(conjs.size(), 0);
  for (std::size_t vi = 0; vi < block.size(); ++vi) {
    std::optional<DenseBitset> dom;
    for (std::size_t ci = 0; ci < conjs.size(); ++ci) {
      const auto& fv = free_of(conjs[ci].f);
      if (fv.size() != 1 || !fv.count(block[vi])) continue;
      auto rel = relate(conjs[ci].f, {});
      DenseBitset bits(static_cast<std::size_t>(m_));
      rel->for_each_row([&](const std::vector<int>& row) {
        bits.set(static_cast<std::size_t>(row[0]));
        return true;
      });
      if (!dom) {
        dom = std::move(bits);
      } else {
        *dom &= bits;
      }
      consumed[ci] = 1;
    }
    if (dom) {
      for (std::size_t i = dom->next(0); i < dom->size(); i = dom->next(i + 1)) {
        domain[vi].push_back(static_cast<int>(i));
      }
    } else {
      domain[vi].resize(static_cast<std::size_t>(m_));
      for (int v = 0; v < m_; ++v) domain[vi][static_cast<std::size_t>(v)] = v;
    }
  }

  // A conjunct is checked as soon as the prefix binding covers its variables.
  std::vector<std::vector<int>> bucket(block.size() + 1);
  for (std::size_t ci = 0; ci < conjs.size(); ++ci) {
    if (consumed[ci]) continue;
    std::size_t depth = 0;
    for (const auto& v : free_of(conjs[ci].f)) {
      auto it = std::find(block.begin(), block.end(), v);
      if (it == block.end()) {
        throw GroupError("grounded evaluation requires a closed formula");
      }
      depth = std::max(depth,
                       static_cast<std::size_t>(it - block.begin()) + 1);
    }
    bucket[depth].push_back(static_cast<int>(ci));
  }
  for (auto& bk : bucket) {
    std::sort(bk.begin(), bk.end(), [&](int a, int c) {
      if (conjs[static_cast<std::size_t>(a)].rank !=
          conjs[static_cast<std::size_t>(c)].rank) {
        return conjs[static_cast<std::size_t>(a)].rank <
               conjs[static_cast<std::size_t>(c)].rank;
      }
      return a < c;
    });
  }

  Env env;
  std::function<bool(std::size_t)> dfs = [&](std::size_t i) -> bool {
    for (int ci : bucket[i]) {
      if (!geval(conjs[static_cast<std::size_t>(ci)].f, env)) return false;
    }
    if (i == block.size()) {
      res->satisfied = true;
      for (const auto& v : block) res->witness.emplace_back(v, env.at(v));
      return true;
    }
    for (int val : domain[i]) {
      env[block[i]] = val;
      if (dfs(i + 1)) return true;
    }
    env.erase(block[i]);
    return false;
  };
  dfs(0);
}

// --- entry points ---------------------------------------------------------------

bool eval(const FiniteGroup& g, const FormulaPtr& f, const Env& env,
          const EvalOptions& options, EvalStats* stats) {
  auto start = std::chrono::steady_clock::now();
  EvalStats local;
  EvalStats* st = stats ? stats : &local;
  *st = EvalStats{};
  st->mode = "naive";
  long long budget = options.budget > 0 ? options.budget : default_budget();
  double est = cost_estimate(g, f, EvalMode::kNaive);
  if (!options.force && est > static_cast<double>(budget)) {
    throw BudgetError(est, static_cast<double>(budget));
  }
  for (const auto& v : free_vars(f)) {
    if (!env.count(v)) throw GroupError("unbound variable: " + v);
  }
  Env scratch = env;
  bool result = naive_rec(g, f, scratch, st);
  st->wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

Relation relation(const FiniteGroup& g, const FormulaPtr& f,
                  const EvalOptions& options, EvalStats* stats) {
  auto start = std::chrono::steady_clock::now();
  EvalStats local;
  EvalStats* st = stats ? stats : &local;
  *st = EvalStats{};
  st->mode = "grounded";
  long long budget = options.budget > 0 ? options.budget : default_budget();
  double est = cost_estimate(g, f, EvalMode::kGrounded);
  if (!options.force && est > static_cast<double>(budget)) {
    throw BudgetError(est, static_cast<double>(budget));
  }
  Evaluator ev(g, options, st);
  Relation out = *ev.relate(f, {});
  st->wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return out;
}

GroundedResult eval_sentence_grounded(const FiniteGroup& g, const FormulaPtr& f,
                                      const EvalOptions& options) {
  auto start = std::chrono::steady_clock::now();
  GroundedResult res;
  res.stats.mode = "grounded";
  if (!is_sentence(f)) {
    throw GroupError("grounded evaluation requires a closed formula");
  }
  long long budget = options.budget > 0 ? options.budget : default_budget();
  double est = cost_estimate(g, f, EvalMode::kGrounded);
  if (!options.force && est > static_cast<double>(budget)) {
    throw BudgetError(est, static_cast<double>(budget));
  }
  Evaluator ev(g, options, &res.stats);
  ev.solve(f, &res);
  res.stats.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return res;
}

}  // namespace grouplog
