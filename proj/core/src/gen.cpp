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

#include "grouplog/gen.hpp"

#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "grouplog/errors.hpp"

namespace grouplog {
namespace {

// Number of binary digits of v >= 1.
int bit_count(long long v) {
  return std::bit_width(static_cast<unsigned long long>(v));
}

// Smallest k with 2^k >= v, for v >= 1.
int ceil_log2(long long v) {
  if (v <= 1) return 0;
  return std::bit_width(static_cast<unsigned long long>(v - 1));
}

// Exact bit length of n!, via a little base-2^32 accumulator; n! itself may
// not fit in any machine word.
int factorial_bit_length(int n) {
  std::vector<std::uint32_t> digits{1};
  for (int i = 2; i <= n; ++i) {
    std::uint64_t carry = 0;
    for (std::uint32_t& d : digits) {
      const std::uint64_t prod =
          static_cast<std::uint64_t>(d) * static_cast<std::uint64_t>(i) + carry;
      d = static_cast<std::uint32_t>(prod);
      carry = prod >> 32;
    }
    while (carry != 0) {
      digits.push_back(static_cast<std::uint32_t>(carry));
      carry >>= 32;
    }
  }
  return 32 * (static_cast<int>(digits.size()) - 1) +
         std::bit_width(digits.back());
}

// n! when it fits in a signed 64-bit integer, 0 otherwise.
long long checked_factorial(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) {
    if (f > (1LL << 62) / i) return 0;
    f *= i;
  }
  return f;
}

// Ascending prime factorization by trial division; inputs are small.
std::vector<std::pair<long long, int>> factorize(long long v) {
  std::vector<std::pair<long long, int>> out;
  for (long long p = 2; p * p <= v; ++p) {
    if (v % p != 0) continue;
    int z = 0;
    while (v % p == 0) {
      v /= p;
      ++z;
    }
    out.emplace_back(p, z);
  }
  if (v > 1) out.emplace_back(v, 1);
  return out;
}

struct PrimePower {
  long long p = 0;
  int z = 0;
};

PrimePower factor_prime_power(long long q) {
  if (q < 2) throw GroupError("not a prime power: " + std::to_string(q));
  const auto factors = factorize(q);
  if (factors.size() != 1) {
    throw GroupError("not a prime power: " + std::to_string(q));
  }
  return PrimePower{factors[0].first, factors[0].second};
}

std::string idx(const std::string& stem, long long i) {
  return stem + std::to_string(i);
}

FormulaPtr exists_chain(const std::vector<std::string>& vars, FormulaPtr body) {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
    body = mk_ex(*it, std::move(body));
  }
  return body;
}

FormulaPtr forall_chain(const std::vector<std::string>& vars, FormulaPtr body) {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
    body = mk_all(*it, std::move(body));
  }
  return body;
}

// "2v = rhs" in additive notation: v * v = rhs.
FormulaPtr doubled_is(const std::string& v, TermPtr rhs) {
  return mk_eq(mk_mul(mk_var(v), mk_var(v)), std::move(rhs));
}

std::vector<std::string> numbered_vars(const std::string& stem, int count) {
  std::vector<std::string> names;
  names.reserve(count);
  for (int i = 1; i <= count; ++i) names.push_back(idx(stem, i));
  return names;
}

std::vector<TermPtr> var_terms(const std::vector<std::string>& names) {
  std::vector<TermPtr> terms;
  terms.reserve(names.size());
  for (const std::string& n : names) terms.push_back(mk_var(n));
  return terms;
}

TermPtr left_fold_product(const std::vector<TermPtr>& terms) {
  TermPtr prod = terms.front();
  for (std::size_t i = 1; i < terms.size(); ++i) prod = mk_mul(prod, terms[i]);
  return prod;
}

}  // namespace

FormulaPtr theta_applied(long long n, TermPtr x, TermPtr y,
                         const std::string& bound_prefix) {
  if (n < 1) {
    throw GroupError("theta: exponent must be positive, got " +
                     std::to_string(n));
  }
  const int k = bit_count(n);
  std::vector<std::string> chain = numbered_vars(bound_prefix, k);
  std::vector<FormulaPtr> conjuncts;
  conjuncts.push_back(mk_eq(mk_var(chain.front()), x));
  conjuncts.push_back(mk_eq(mk_var(chain.back()), y));
  // Repeated squaring along the binary digits of n (most significant first):
  // chain[i] = chain[i-1]^2 * x^digit.
  for (int i = 1; i < k; ++i) {
    const bool digit = ((n >> (k - 1 - i)) & 1) != 0;
    const TermPtr prev = mk_var(chain[i - 1]);
    conjuncts.push_back(mk_eq(
        mk_var(chain[i]), mk_mul(mk_mul(prev, prev), digit ? x : mk_one())));
  }
  return exists_chain(chain, bigand(conjuncts));
}

FormulaPtr theta(long long n) {
  return theta_applied(n, mk_var("x"), mk_var("y"), "y");
}

FormulaPtr delta_applied(int i, TermPtr subject,
                         const std::vector<TermPtr>& params,
                         const std::string& bound_prefix) {
  if (i < 0) throw GroupError("delta: depth must be nonnegative");
  if (i == 0) {
    std::vector<FormulaPtr> disjuncts;
    disjuncts.reserve(params.size() + 1);
    for (const TermPtr& p : params) disjuncts.push_back(mk_eq(subject, p));
    disjuncts.push_back(mk_eq(subject, mk_one()));
    return bigor(disjuncts);
  }
  const std::string u = bound_prefix + "u" + std::to_string(i);
  const std::string v = bound_prefix + "v" + std::to_string(i);
  const std::string w = bound_prefix + "w" + std::to_string(i);
  FormulaPtr guard =
      mk_or(mk_eq(mk_var(w), mk_var(u)), mk_eq(mk_var(w), mk_var(v)));
  FormulaPtr body = mk_and(
      mk_eq(std::move(subject), mk_mul(mk_var(u), mk_var(v))),
      mk_all(w, mk_imp(std::move(guard),
                       delta_applied(i - 1, mk_var(w), params, bound_prefix))));
  return mk_ex(u, mk_ex(v, std::move(body)));
}

FormulaPtr delta(int i, int m) {
  if (m < 0) throw GroupError("delta: parameter count must be nonnegative");
  return delta_applied(i, mk_var("g"), var_terms(numbered_vars("x", m)), "");
}

FormulaPtr pi_applied(long long order, TermPtr subject,
                      const std::vector<TermPtr>& params,
                      const std::string& bound_prefix) {
  if (order < 1) throw GroupError("pi: group order must be positive");
  return delta_applied(ceil_log2(order), std::move(subject), params,
                       bound_prefix);
}

FormulaPtr pi(int m, long long order) {
  if (m < 0) throw GroupError("pi: parameter count must be nonnegative");
  return pi_applied(order, mk_var("g"), var_terms(numbered_vars("x", m)), "");
}

FormulaPtr pi_prime_applied(long long p, TermPtr subject, TermPtr param,
                            const std::string& bound_prefix) {
  if (p < 1) throw GroupError("pi_prime: bound must be positive");
  return delta_applied(ceil_log2(p), std::move(subject), {std::move(param)},
                       bound_prefix);
}

FormulaPtr pi_prime(long long p) {
  return pi_prime_applied(p, mk_var("g"), mk_var("x"), "");
}

FormulaPtr tau(const Word& w, const std::vector<std::string>& gen_vars,
               const std::string& bound_prefix) {
  if (w.syllables.empty()) throw GroupError("tau: empty relator word");
  const int k = static_cast<int>(w.syllables.size());
  std::vector<std::string> targets = numbered_vars(bound_prefix + "b", k);
  std::vector<FormulaPtr> conjuncts;
  conjuncts.reserve(k + 1);
  for (int i = 0; i < k; ++i) {
    const Syllable& s = w.syllables[i];
    if (s.gen < 0 || s.gen >= static_cast<int>(gen_vars.size())) {
      throw GroupError("tau: relator mentions generator g" +
                       std::to_string(s.gen + 1) + " but only " +
                       std::to_string(gen_vars.size()) + " variables given");
    }
    if (s.exp == 0) throw GroupError("tau: zero exponent in relator");
    TermPtr base = mk_var(gen_vars[s.gen]);
    if (s.exp < 0) base = mk_inv(base);
    const long long magnitude = s.exp < 0 ? -s.exp : s.exp;
    conjuncts.push_back(
        theta_applied(magnitude, std::move(base), mk_var(targets[i]),
                      bound_prefix + "t" + std::to_string(i + 1) + "_"));
  }
  conjuncts.push_back(
      mk_eq(left_fold_product(var_terms(targets)), mk_one()));
  return exists_chain(targets, bigand(conjuncts));
}

FormulaPtr zeta(const Presentation& p,
                const std::vector<std::string>& gen_vars) {
  if (static_cast<int>(gen_vars.size()) < p.ngens) {
    throw GroupError("zeta: presentation has " + std::to_string(p.ngens) +
                     " generators but only " + std::to_string(gen_vars.size()) +
                     " variables given");
  }
  if (p.relators.empty()) return mk_eq(mk_one(), mk_one());
  std::vector<FormulaPtr> conjuncts;
  conjuncts.reserve(p.relators.size());
  for (std::size_t j = 0; j < p.relators.size(); ++j) {
    conjuncts.push_back(
        tau(p.relators[j], gen_vars, "r" + std::to_string(j + 1) + "_"));
  }
  return bigand(conjuncts);
}

FamilySentence sentence_cyclic2(int n) {
  if (n < 1) throw GroupError("sentence_cyclic2: n must be >= 1");
  if (n > 62) throw GroupError("sentence_cyclic2: n too large (max 62)");

  // Either no y doubles to x, or two witnesses z, w exhaust all such y.
  FormulaPtr no_root = mk_all("y", mk_not(doubled_is("y", mk_var("x"))));
  FormulaPtr two_roots = mk_ex(
      "z",
      mk_ex("w",
            bigand({doubled_is("z", mk_var("x")), doubled_is("w", mk_var("x")),
                    mk_all("t", mk_imp(doubled_is("t", mk_var("x")),
                                       mk_or(mk_eq(mk_var("t"), mk_var("z")),
                                             mk_eq(mk_var("t"), mk_var("w")))))})));
  FormulaPtr psi1 = mk_or(std::move(no_root), std::move(two_roots));

  // No doubling chain of length n starting at x ends away from the identity.
  std::vector<FormulaPtr> chain_down;
  chain_down.push_back(doubled_is("x", mk_var("x2")));
  for (int i = 2; i < n + 1; ++i) {
    chain_down.push_back(doubled_is(idx("x", i), mk_var(idx("x", i + 1))));
  }
  chain_down.push_back(mk_not(mk_eq(mk_var(idx("x", n + 1)), mk_one())));
  std::vector<std::string> down_vars;
  for (int i = 2; i <= n + 1; ++i) down_vars.push_back(idx("x", i));
  FormulaPtr psi2 = mk_not(exists_chain(down_vars, bigand(chain_down)));

  // Some doubling chain of length n-1 ends away from the identity.
  std::vector<FormulaPtr> chain_up;
  for (int i = 1; i < n; ++i) {
    chain_up.push_back(doubled_is(idx("x", i), mk_var(idx("x", i + 1))));
  }
  chain_up.push_back(mk_not(mk_eq(mk_var(idx("x", n)), mk_one())));
  std::vector<std::string> up_vars;
  for (int i = 1; i <= n; ++i) up_vars.push_back(idx("x", i));
  FormulaPtr psi3 = exists_chain(up_vars, bigand(chain_up));

  FamilySentence s;
  s.formula = mk_all("x", bigand({psi1, psi2, psi3}));
  s.id = "cyclic2_n" + std::to_string(n);
  s.family = "cyclic2";
  s.params = {n};
  s.target_order = 1LL << n;
  s.target = GroupDescriptor{"cyclic", {1LL << n}};
  s.length = length(s.formula);
  return s;
}

namespace {

// Shared scaffold of the presented-group families: relators hold, the bound
// variables generate (at doubling depth k), plus a family-specific
// nontriviality clause.
FormulaPtr presented_sentence_body(const Presentation& p, int generation_depth,
                                   const std::vector<std::string>& gen_vars,
                                   FormulaPtr psi3) {
  FormulaPtr psi1 = zeta(p, gen_vars);
  FormulaPtr psi2 =
      mk_all("h", delta_applied(generation_depth, mk_var("h"),
                                var_terms(gen_vars), "g"));
  return bigand({std::move(psi1), std::move(psi2), std::move(psi3)});
}

}  // namespace

FamilySentence sentence_simple(const Presentation& p, long long order,
                               const std::string& instance_tag) {
  if (p.ngens < 1) {
    throw GroupError("sentence_simple: presentation needs a generator");
  }
  if (order < 1) throw GroupError("sentence_simple: order must be positive");
  std::vector<std::string> gen_vars = numbered_vars("a", p.ngens);
  FormulaPtr psi3 = mk_not(mk_eq(mk_var(gen_vars.front()), mk_one()));
  FormulaPtr body = presented_sentence_body(p, ceil_log2(order), gen_vars,
                                            std::move(psi3));

  FamilySentence s;
  s.formula = exists_chain(gen_vars, std::move(body));
  s.id = instance_tag.empty() ? "simple_o" + std::to_string(order)
                              : "simple_" + instance_tag;
  s.family = "simple";
  s.params = {order};
  s.target_order = order;
  s.notes = serialize_presentation(p);
  s.length = length(s.formula);
  return s;
}

FamilySentence sentence_symmetric(int n, const std::optional<Presentation>& p,
                                  int ncycle_gen) {
  if (n < 3) throw GroupError("sentence_symmetric: n must be >= 3");
  const Presentation pres = p ? *p : symmetric_presentation(n);
  if (ncycle_gen < 0 || ncycle_gen >= pres.ngens) {
    throw GroupError("sentence_symmetric: presentation lacks generator " +
                     std::to_string(ncycle_gen + 1) +
                     " designated as the n-cycle");
  }
  std::vector<std::string> gen_vars = numbered_vars("a", pres.ngens);
  const TermPtr eta = mk_var(gen_vars[ncycle_gen]);
  FormulaPtr psi3 = mk_and(mk_not(mk_eq(eta, mk_one())),
                           mk_not(mk_eq(mk_mul(eta, eta), mk_one())));
  FormulaPtr body = presented_sentence_body(pres, factorial_bit_length(n),
                                            gen_vars, std::move(psi3));

  FamilySentence s;
  s.formula = exists_chain(gen_vars, std::move(body));
  s.id = "symmetric_n" + std::to_string(n);
  s.family = "symmetric";
  s.params = {n};
  s.target_order = checked_factorial(n);
  s.target = GroupDescriptor{"symmetric", {n}};
  s.notes = "n-cycle generator g" + std::to_string(ncycle_gen + 1) + "\n" +
            serialize_presentation(pres);
  s.length = length(s.formula);
  return s;
}

namespace {

// The independence clause for the equivalence class (prime p, member indices
// js into qs/gen_vars); class_tag makes its bound names unique.
FormulaPtr xi_class(long long p, const std::vector<int>& js,
                    const std::vector<std::string>& gen_vars,
                    const std::string& class_tag) {
  const int lambda = static_cast<int>(js.size());
  std::vector<FormulaPtr> parts;

  // First part: no member has a p-th root.
  for (int t = 0; t < lambda; ++t) {
    const std::string root = class_tag + "r" + std::to_string(t + 1);
    parts.push_back(mk_not(mk_ex(
        root, theta_applied(p, mk_var(root), mk_var(gen_vars[js[t]]),
                            class_tag + "rt" + std::to_string(t + 1) + "_"))));
  }

  // Second part: a combination of bounded powers that is a p-th power forces
  // every component to be a p-th power.
  std::vector<std::string> bs = numbered_vars(class_tag + "b", lambda);
  std::vector<FormulaPtr> premise;
  for (int t = 0; t < lambda; ++t) {
    // Each bounded element must lie in the cyclic subgroup generated by its
    // class member; the reverse containment would make the premise vacuous
    // whenever the members fail to be independent.
    premise.push_back(pi_prime_applied(p, mk_var(bs[t]),
                                       mk_var(gen_vars[js[t]]),
                                       class_tag + "p" + std::to_string(t + 1)));
  }
  const std::string c = class_tag + "c";
  premise.push_back(
      mk_ex(c, theta_applied(p, mk_var(c), left_fold_product(var_terms(bs)),
                             class_tag + "s_")));
  std::vector<std::string> cs = numbered_vars(class_tag + "c", lambda);
  std::vector<FormulaPtr> conclusion;
  for (int t = 0; t < lambda; ++t) {
    conclusion.push_back(
        theta_applied(p, mk_var(cs[t]), mk_var(bs[t]),
                      class_tag + "w" + std::to_string(t + 1) + "_"));
  }
  parts.push_back(forall_chain(
      bs, mk_imp(bigand(premise),
                 exists_chain(cs, bigand(conclusion)))));
  return bigand(parts);
}

}  // namespace

FamilySentence sentence_abelian(const std::vector<long long>& qs) {
  if (qs.empty()) throw GroupError("sentence_abelian: need at least one factor");
  const int m = static_cast<int>(qs.size());
  std::vector<PrimePower> pps;
  long long horder = 1;
  for (long long q : qs) {
    pps.push_back(factor_prime_power(q));
    if (horder > (1LL << 62) / q) {
      throw GroupError("sentence_abelian: group order too large");
    }
    horder *= q;
  }
  std::vector<std::string> gen_vars = numbered_vars("a", m);

  // psi1: the group is abelian and each generator's order divides q_i.
  std::vector<FormulaPtr> c1;
  c1.push_back(mk_all(
      "g", mk_all("h", mk_eq(macro_commutator(mk_var("g"), mk_var("h")),
                             mk_one()))));
  for (int i = 0; i < m; ++i) {
    c1.push_back(theta_applied(qs[i], mk_var(gen_vars[i]), mk_one(),
                               "o" + std::to_string(i + 1) + "_"));
  }

  // psi2: the bound variables generate.
  FormulaPtr psi2 =
      mk_all("g", pi_applied(horder, mk_var("g"), var_terms(gen_vars), "s"));

  // psi3: orders are exact, and each same-prime class is independent.
  std::vector<FormulaPtr> c3;
  for (int i = 0; i < m; ++i) {
    c3.push_back(mk_not(theta_applied(qs[i] / pps[i].p, mk_var(gen_vars[i]),
                                      mk_one(),
                                      "e" + std::to_string(i + 1) + "_")));
  }
  std::vector<long long> class_primes;  // in order of first occurrence
  std::map<long long, std::vector<int>> classes;
  for (int i = 0; i < m; ++i) {
    if (classes.find(pps[i].p) == classes.end()) {
      class_primes.push_back(pps[i].p);
    }
    classes[pps[i].p].push_back(i);
  }
  for (std::size_t ci = 0; ci < class_primes.size(); ++ci) {
    c3.push_back(xi_class(class_primes[ci], classes[class_primes[ci]],
                          gen_vars, "q" + std::to_string(ci + 1) + "_"));
  }

  FamilySentence s;
  s.formula = exists_chain(
      gen_vars, bigand({bigand(c1), std::move(psi2), bigand(c3)}));
  std::string id = "abelian_";
  for (int i = 0; i < m; ++i) {
    if (i > 0) id += "x";
    id += std::to_string(qs[i]);
  }
  s.id = id;
  s.family = "abelian";
  s.params = qs;
  s.target_order = horder;
  s.target = GroupDescriptor{"abelian", qs};
  s.length = length(s.formula);
  return s;
}

namespace {

// The coordinate formula with caller-chosen names for the free variables
// h, x, y, z (the parameters are always a and b).
FormulaPtr phi_ut3_named(long long n, const std::string& h,
                         const std::string& x, const std::string& y,
                         const std::string& z) {
  const TermPtr a = mk_var("a");
  const TermPtr b = mk_var("b");
  std::vector<FormulaPtr> conjuncts;
  conjuncts.push_back(pi_prime_applied(n, mk_var("u"), a, "fa"));
  conjuncts.push_back(pi_prime_applied(n, mk_var("v"), b, "fb"));
  conjuncts.push_back(mk_all(
      "w", mk_eq(macro_commutator(mk_var(z), mk_var("w")), mk_one())));
  conjuncts.push_back(
      mk_eq(mk_var(h), mk_mul(mk_mul(mk_var("u"), mk_var("v")), mk_var(z))));
  conjuncts.push_back(mk_eq(mk_var(x), macro_commutator(mk_var("u"), b)));
  conjuncts.push_back(mk_eq(mk_var(y), macro_commutator(a, mk_var("v"))));
  return mk_ex("u", mk_ex("v", bigand(conjuncts)));
}

}  // namespace

FormulaPtr phi_ut3(long long n) {
  if (n < 2) throw GroupError("phi_ut3: n must be >= 2");
  return phi_ut3_named(n, "h", "x", "y", "z");
}

FamilySentence sentence_ut3(long long n) {
  if (n < 2) throw GroupError("sentence_ut3: n must be >= 2");
  if (n > 2'000'000) throw GroupError("sentence_ut3: n too large");
  const TermPtr a = mk_var("a");
  const TermPtr b = mk_var("b");
  const TermPtr cab = macro_commutator(a, b);

  // psi1: orders of a and b divide n.
  FormulaPtr psi1 = mk_and(theta_applied(n, a, mk_one(), "j1_"),
                           theta_applied(n, b, mk_one(), "j2_"));

  // psi2: [a,b] has order exactly n, via one witness per prime factor.
  const auto factors = factorize(n);
  std::vector<std::string> cs =
      numbered_vars("c", static_cast<int>(factors.size()));
  std::vector<FormulaPtr> blocks;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    long long q = 1;
    for (int e = 0; e < factors[i].second; ++e) q *= factors[i].first;
    const std::string tag = std::to_string(i + 1);
    blocks.push_back(
        bigand({pi_prime_applied(n, mk_var(cs[i]), cab, "k" + tag),
                theta_applied(q, mk_var(cs[i]), mk_one(), "l" + tag + "_"),
                mk_not(theta_applied(q / factors[i].first, mk_var(cs[i]),
                                     mk_one(), "m" + tag + "_"))}));
  }
  FormulaPtr psi2 = mk_and(theta_applied(n, cab, mk_one(), "n_"),
                           exists_chain(cs, bigand(blocks)));

  // psi3: commutators form a central subgroup equal to the whole center,
  // and the center sits inside <[a,b]>.
  FormulaPtr c31 = forall_chain(
      {"r", "s", "t", "u"},
      mk_ex("v",
            mk_ex("w", mk_eq(mk_mul(macro_commutator(mk_var("r"), mk_var("s")),
                                    macro_commutator(mk_var("t"), mk_var("u"))),
                             macro_commutator(mk_var("v"), mk_var("w"))))));
  FormulaPtr c32 = forall_chain(
      {"r", "s", "h"},
      mk_eq(macro_commutator(macro_commutator(mk_var("r"), mk_var("s")),
                             mk_var("h")),
            mk_one()));
  FormulaPtr c33 = mk_all(
      "z",
      mk_imp(mk_all("h", mk_eq(macro_commutator(mk_var("z"), mk_var("h")),
                               mk_one())),
             mk_ex("r", mk_ex("s", mk_and(mk_eq(macro_commutator(mk_var("r"),
                                                                 mk_var("s")),
                                                mk_var("z")),
                                          pi_prime_applied(n, mk_var("z"), cab,
                                                           "zc"))))));
  FormulaPtr psi3 = bigand({c31, c32, c33});

  // psi4, psi5: the coordinate map is total and single-valued.
  FormulaPtr psi4 = mk_all(
      "h", mk_ex("x", mk_ex("y", mk_ex("z", phi_ut3_named(n, "h", "x", "y",
                                                          "z")))));
  FormulaPtr psi5 = forall_chain(
      {"h", "x1", "x2", "y1", "y2", "z1", "z2"},
      mk_imp(mk_and(phi_ut3_named(n, "h", "x1", "y1", "z1"),
                    phi_ut3_named(n, "h", "x2", "y2", "z2")),
             bigand({mk_eq(mk_var("x1"), mk_var("x2")),
                     mk_eq(mk_var("y1"), mk_var("y2")),
                     mk_eq(mk_var("z1"), mk_var("z2"))})));

  // psi6: the coordinate map reaches every central triple.
  FormulaPtr psi6 = forall_chain(
      {"x", "y", "z"},
      mk_imp(mk_all("g", bigand({mk_eq(macro_commutator(mk_var("x"),
                                                        mk_var("g")),
                                       mk_one()),
                                 mk_eq(macro_commutator(mk_var("y"),
                                                        mk_var("g")),
                                       mk_one()),
                                 mk_eq(macro_commutator(mk_var("z"),
                                                        mk_var("g")),
                                       mk_one())})),
             mk_ex("h", phi_ut3_named(n, "h", "x", "y", "z"))));

  FamilySentence s;
  s.formula = mk_ex(
      "a", mk_ex("b", bigand({psi1, psi2, psi3, psi4, psi5, psi6})));
  s.id = "ut3_n" + std::to_string(n);
  s.family = "ut3";
  s.params = {n};
  s.target_order = n * n * n;
  s.target = GroupDescriptor{"ut3", {n}};
  s.length = length(s.formula);
  return s;
}

Presentation a5_presentation() {
  Presentation p;
  p.ngens = 2;
  Word r1;
  r1.syllables = {{0, 2}};
  Word r2;
  r2.syllables = {{1, 3}};
  Word r3;
  for (int i = 0; i < 5; ++i) {
    r3.syllables.push_back({0, 1});
    r3.syllables.push_back({1, 1});
  }
  p.relators = {r1, r2, r3};
  return p;
}

Presentation symmetric_presentation(int n) {
  if (n < 3) throw GroupError("symmetric_presentation: n must be >= 3");
  Presentation p;
  p.ngens = 2;  // g1: the n-cycle; g2: the transposition
  Word cycle_order;
  cycle_order.syllables = {{0, n}};
  Word transposition_order;
  transposition_order.syllables = {{1, 2}};
  Word coxeter;
  for (int i = 0; i < n - 1; ++i) {
    coxeter.syllables.push_back({1, 1});
    coxeter.syllables.push_back({0, 1});
  }
  p.relators = {cycle_order, transposition_order, coxeter};
  for (int j = 2; j <= n / 2; ++j) {
    Word braid;
    for (int rep = 0; rep < 2; ++rep) {
      braid.syllables.push_back({1, 1});
      braid.syllables.push_back({0, -j});
      braid.syllables.push_back({1, 1});
      braid.syllables.push_back({0, j});
    }
    p.relators.push_back(braid);
  }
  Word triple;
  for (int rep = 0; rep < 3; ++rep) {
    triple.syllables.push_back({1, 1});
    triple.syllables.push_back({0, -1});
    triple.syllables.push_back({1, 1});
    triple.syllables.push_back({0, 1});
  }
  p.relators.push_back(triple);
  return p;
}

FamilySentence sentence_simple_a5() {
  FamilySentence s = sentence_simple(a5_presentation(), 60, "a5");
  s.target = GroupDescriptor{"alternating", {5}};
  return s;
}

}  // namespace grouplog
