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

#include "grouplog/group.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>

namespace grouplog {

namespace {

void check_order_cap(long long order, int order_cap, const std::string& what) {
  if (order < 1) {
    throw GroupError(what + ": order must be positive, got " + std::to_string(order));
  }
  if (order > order_cap) {
    throw GroupError(what + ": order " + std::to_string(order) +
                     " exceeds cap " + std::to_string(order_cap));
  }
}

// Builds inv_table from op_table; throws if some element has no two-sided
// inverse.
void fill_inverses(FiniteGroup& g) {
  g.inv_table.assign(g.order, -1);
  for (int a = 0; a < g.order; ++a) {
    for (int b = 0; b < g.order; ++b) {
      if (g.op(a, b) == FiniteGroup::identity && g.op(b, a) == FiniteGroup::identity) {
        g.inv_table[a] = b;
        break;
      }
    }
    if (g.inv_table[a] < 0) {
      throw GroupError("element " + std::to_string(a) + " has no two-sided inverse");
    }
  }
}

bool is_prime_power(long long n, long long* prime_out) {
  if (n < 2) return false;
  long long p = 2;
  while (p * p <= n && n % p != 0) ++p;
  if (p * p > n) p = n;  // n itself is prime
  long long m = n;
  while (m % p == 0) m /= p;
  if (m != 1) return false;
  if (prime_out != nullptr) *prime_out = p;
  return true;
}

// --- permutation helpers (n <= 7 under the default cap) -------------------

using Perm = std::vector<int>;

long long factorial(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// 3 bits per image; n <= 8 fits in 24 bits.
uint32_t pack_perm(const Perm& p) {
  uint32_t key = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    key |= static_cast<uint32_t>(p[i]) << (3 * i);
  }
  return key;
}

bool is_even(const Perm& p) {
  int inversions = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      if (p[i] > p[j]) ++inversions;
    }
  }
  return inversions % 2 == 0;
}

std::string perm_label(const Perm& p) {
  std::string s;
  for (int v : p) s += static_cast<char>('0' + v);
  return s;
}

// Builds the Cayley table of a set of permutations (assumed closed under
// composition, with the identity lex-first) under (a*b)(i) = a(b(i)).
FiniteGroup permutation_group(const std::vector<Perm>& perms, int n,
                              const std::string& tag) {
  FiniteGroup g;
  g.order = static_cast<int>(perms.size());
  g.family_tag = tag;
  g.op_table.assign(static_cast<std::size_t>(g.order) * g.order, -1);
  g.labels.reserve(perms.size());

  std::unordered_map<uint32_t, int> rank;
  rank.reserve(perms.size() * 2);
  for (int i = 0; i < g.order; ++i) {
    rank.emplace(pack_perm(perms[i]), i);
    g.labels.push_back(perm_label(perms[i]));
  }

  Perm composed(static_cast<std::size_t>(n));
  for (int a = 0; a < g.order; ++a) {
    for (int b = 0; b < g.order; ++b) {
      for (int i = 0; i < n; ++i) composed[i] = perms[a][perms[b][i]];
      auto it = rank.find(pack_perm(composed));
      if (it == rank.end()) {
        throw GroupError(tag + ": permutation set not closed under composition");
      }
      g.op_table[static_cast<std::size_t>(a) * g.order + b] = it->second;
    }
  }
  fill_inverses(g);
  return g;
}

}  // namespace

// --- constructors ----------------------------------------------------------

FiniteGroup cyclic_group(long long n, int order_cap) {
  check_order_cap(n, order_cap, "cyclic");
  FiniteGroup g;
  g.order = static_cast<int>(n);
  g.family_tag = "cyclic(" + std::to_string(n) + ")";
  g.op_table.resize(static_cast<std::size_t>(n) * n);
  g.labels.reserve(n);
  for (long long a = 0; a < n; ++a) {
    g.labels.push_back(std::to_string(a));
    for (long long b = 0; b < n; ++b) {
      g.op_table[a * n + b] = static_cast<int>((a + b) % n);
    }
  }
  fill_inverses(g);
  return g;
}

FiniteGroup abelian_group(const std::vector<long long>& prime_powers, int order_cap) {
  if (prime_powers.empty()) {
    throw GroupError("abelian: at least one factor is required");
  }
  long long order = 1;
  for (long long q : prime_powers) {
    if (!is_prime_power(q, nullptr)) {
      throw GroupError("abelian: factor " + std::to_string(q) +
                       " is not a prime power");
    }
    order *= q;
    check_order_cap(order, order_cap, "abelian");
  }

  const int k = static_cast<int>(prime_powers.size());
  // Mixed-radix weights, most significant factor first.
  std::vector<long long> weight(k, 1);
  for (int i = k - 2; i >= 0; --i) weight[i] = weight[i + 1] * prime_powers[i + 1];

  auto decode = [&](long long x, std::vector<long long>& digits) {
    for (int i = 0; i < k; ++i) {
      digits[i] = x / weight[i];
      x %= weight[i];
    }
  };

  FiniteGroup g;
  g.order = static_cast<int>(order);
  {
    std::string tag = "abelian(";
    for (int i = 0; i < k; ++i) tag += (i ? "," : "") + std::to_string(prime_powers[i]);
    g.family_tag = tag + ")";
  }
  g.op_table.resize(static_cast<std::size_t>(order) * order);
  g.labels.reserve(order);

  std::vector<long long> da(k), db(k);
  for (long long a = 0; a < order; ++a) {
    decode(a, da);
    std::string label = "(";
    for (int i = 0; i < k; ++i) label += (i ? "," : "") + std::to_string(da[i]);
    g.labels.push_back(label + ")");
    for (long long b = 0; b < order; ++b) {
      decode(b, db);
      long long idx = 0;
      for (int i = 0; i < k; ++i) {
        idx += ((da[i] + db[i]) % prime_powers[i]) * weight[i];
      }
      g.op_table[a * order + b] = static_cast<int>(idx);
    }
  }
  fill_inverses(g);
  return g;
}

FiniteGroup symmetric_group(int n, int order_cap) {
  if (n < 1) throw GroupError("symmetric: n must be >= 1");
  check_order_cap(factorial(n), order_cap, "symmetric");
  Perm p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::vector<Perm> perms;
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return permutation_group(perms, n, "symmetric(" + std::to_string(n) + ")");
}

FiniteGroup alternating_group(int n, int order_cap) {
  if (n < 1) throw GroupError("alternating: n must be >= 1");
  check_order_cap(n < 3 ? 1 : factorial(n) / 2, order_cap, "alternating");
  Perm p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::vector<Perm> perms;
  do {
    if (is_even(p)) perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return permutation_group(perms, n, "alternating(" + std::to_string(n) + ")");
}

FiniteGroup dihedral_group(int n, int order_cap) {
  if (n < 1) throw GroupError("dihedral: n must be >= 1");
  check_order_cap(2LL * n, order_cap, "dihedral");
  // Elements 0..n-1 are rotations r^x; n..2n-1 are reflections r^j * s,
  // with s * r = r^-1 * s.
  FiniteGroup g;
  g.order = 2 * n;
  g.family_tag = "dihedral(" + std::to_string(n) + ")";
  g.op_table.resize(static_cast<std::size_t>(g.order) * g.order);
  g.labels.reserve(g.order);
  for (int i = 0; i < n; ++i) g.labels.push_back("r" + std::to_string(i));
  for (int i = 0; i < n; ++i) g.labels.push_back("r" + std::to_string(i) + "s");

  auto set = [&](int a, int b, int v) {
    g.op_table[static_cast<std::size_t>(a) * g.order + b] = v;
  };
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      set(x, y, (x + y) % n);                    // r^x * r^y
      set(x, n + y, (x + y) % n + n);            // r^x * (r^y s)
      set(n + x, y, (x - y % n + n) % n + n);    // (r^x s) * r^y
      set(n + x, n + y, (x - y % n + n) % n);    // (r^x s) * (r^y s)
    }
  }
  fill_inverses(g);
  return g;
}

FiniteGroup quaternion_group() {
  // Index 2u + s with u in {0:1, 1:i, 2:j, 3:k} and s the sign bit.
  static constexpr int kUnit[4][4] = {
      {0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static constexpr int kFlip[4][4] = {
      {0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  static const char* kNames[8] = {"1", "-1", "i", "-i", "j", "-j", "k", "-k"};

  FiniteGroup g;
  g.order = 8;
  g.family_tag = "quaternion8";
  g.op_table.resize(64);
  g.labels.assign(kNames, kNames + 8);
  for (int a = 0; a < 8; ++a) {
    const int u1 = a / 2, s1 = a % 2;
    for (int b = 0; b < 8; ++b) {
      const int u2 = b / 2, s2 = b % 2;
      const int u = kUnit[u1][u2];
      const int s = s1 ^ s2 ^ kFlip[u1][u2];
      g.op_table[a * 8 + b] = 2 * u + s;
    }
  }
  fill_inverses(g);
  return g;
}

FiniteGroup ut3_group(long long n, int order_cap) {
  if (n < 1) throw GroupError("ut3: n must be >= 1");
  check_order_cap(n * n * n, order_cap, "ut3");
  // Element (u, v, w) = [[1, u, w], [0, 1, v], [0, 0, 1]] over Z_n,
  // indexed u*n^2 + v*n + w.  Product adds entries with the carry
  // w += u1 * v2 from the matrix multiplication.
  FiniteGroup g;
  g.order = static_cast<int>(n * n * n);
  g.family_tag = "ut3(" + std::to_string(n) + ")";
  g.op_table.resize(static_cast<std::size_t>(g.order) * g.order);
  g.labels.reserve(g.order);

  for (long long u = 0; u < n; ++u) {
    for (long long v = 0; v < n; ++v) {
      for (long long w = 0; w < n; ++w) {
        g.labels.push_back("(" + std::to_string(u) + "," + std::to_string(v) +
                           "," + std::to_string(w) + ")");
      }
    }
  }
  for (long long a = 0; a < g.order; ++a) {
    const long long u1 = a / (n * n), v1 = (a / n) % n, w1 = a % n;
    for (long long b = 0; b < g.order; ++b) {
      const long long u2 = b / (n * n), v2 = (b / n) % n, w2 = b % n;
      const long long u = (u1 + u2) % n;
      const long long v = (v1 + v2) % n;
      const long long w = (w1 + w2 + u1 * v2) % n;
      g.op_table[a * g.order + b] = static_cast<int>(u * n * n + v * n + w);
    }
  }
  fill_inverses(g);
  return g;
}

Ut3Generators ut3_standard_generators(long long n) {
  if (n < 2) throw GroupError("ut3 generators need n >= 2");
  return Ut3Generators{static_cast<int>(n * n), static_cast<int>(n), 1};
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b, int order_cap) {
  const long long order = static_cast<long long>(a.order) * b.order;
  check_order_cap(order, order_cap, "product");
  FiniteGroup g;
  g.order = static_cast<int>(order);
  g.family_tag = "product(" + a.family_tag + "," + b.family_tag + ")";
  g.op_table.resize(static_cast<std::size_t>(order) * order);
  g.labels.reserve(order);

  auto label_of = [](const FiniteGroup& h, int x) {
    return h.labels.empty() ? std::to_string(x) : h.labels[x];
  };
  for (int xa = 0; xa < a.order; ++xa) {
    for (int xb = 0; xb < b.order; ++xb) {
      g.labels.push_back("(" + label_of(a, xa) + "," + label_of(b, xb) + ")");
    }
  }
  for (int xa = 0; xa < a.order; ++xa) {
    for (int xb = 0; xb < b.order; ++xb) {
      const std::size_t row = static_cast<std::size_t>(xa) * b.order + xb;
      for (int ya = 0; ya < a.order; ++ya) {
        for (int yb = 0; yb < b.order; ++yb) {
          const std::size_t col = static_cast<std::size_t>(ya) * b.order + yb;
          g.op_table[row * order + col] = a.op(xa, ya) * b.order + b.op(xb, yb);
        }
      }
    }
  }
  fill_inverses(g);
  return g;
}

FiniteGroup build_group(const GroupDescriptor& spec, int order_cap) {
  auto want_params = [&](std::size_t lo, std::size_t hi) {
    if (spec.params.size() < lo || spec.params.size() > hi) {
      throw GroupError("family '" + spec.family + "' got " +
                       std::to_string(spec.params.size()) + " parameter(s)");
    }
  };
  if (spec.family == "cyclic") {
    want_params(1, 1);
    return cyclic_group(spec.params[0], order_cap);
  }
  if (spec.family == "abelian") {
    want_params(1, 16);
    return abelian_group(spec.params, order_cap);
  }
  if (spec.family == "symmetric") {
    want_params(1, 1);
    return symmetric_group(static_cast<int>(spec.params[0]), order_cap);
  }
  if (spec.family == "alternating") {
    want_params(1, 1);
    return alternating_group(static_cast<int>(spec.params[0]), order_cap);
  }
  if (spec.family == "dihedral") {
    want_params(1, 1);
    return dihedral_group(static_cast<int>(spec.params[0]), order_cap);
  }
  if (spec.family == "quaternion8") {
    want_params(0, 0);
    return quaternion_group();
  }
  if (spec.family == "ut3") {
    want_params(1, 1);
    return ut3_group(spec.params[0], order_cap);
  }
  throw GroupError("unknown group family '" + spec.family + "'");
}

// --- validation ------------------------------------------------------------

namespace {

// Identity / Latin-square / associativity checks that do not consult the
// inverse table, so file loading can report table defects before the
// (derived) inverse table is even built.
void validate_structure(const FiniteGroup& g) {
  const int m = g.order;
  if (m < 1) throw GroupError("group order must be positive");
  if (g.op_table.size() != static_cast<std::size_t>(m) * m) {
    throw GroupError("operation table has wrong size");
  }
  for (int v : g.op_table) {
    if (v < 0 || v >= m) throw GroupError("operation table entry out of range");
  }
  for (int a = 0; a < m; ++a) {
    if (g.op(0, a) != a || g.op(a, 0) != a) {
      throw GroupError("element 0 is not a two-sided identity");
    }
  }
  // Latin square: every row and column is a permutation.
  std::vector<char> seen(static_cast<std::size_t>(m));
  for (int a = 0; a < m; ++a) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int b = 0; b < m; ++b) {
      if (seen[static_cast<std::size_t>(g.op(a, b))]++) {
        throw GroupError("Latin-square violation: row " + std::to_string(a) +
                         " repeats a value");
      }
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (int b = 0; b < m; ++b) {
      if (seen[static_cast<std::size_t>(g.op(b, a))]++) {
        throw GroupError("Latin-square violation: column " + std::to_string(a) +
                         " repeats a value");
      }
    }
  }
  if (m <= kExhaustiveCheckCap) {
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) {
        const int ab = g.op(a, b);
        for (int c = 0; c < m; ++c) {
          if (g.op(ab, c) != g.op(a, g.op(b, c))) {
            throw GroupError("associativity fails at (" + std::to_string(a) +
                             "," + std::to_string(b) + "," + std::to_string(c) + ")");
          }
        }
      }
    }
  } else {
    std::mt19937_64 rng(0xC0FFEEuLL);  // fixed seed: deterministic validation
    std::uniform_int_distribution<int> pick(0, m - 1);
    for (int t = 0; t < 262144; ++t) {
      const int a = pick(rng), b = pick(rng), c = pick(rng);
      if (g.op(g.op(a, b), c) != g.op(a, g.op(b, c))) {
        throw GroupError("associativity fails at (" + std::to_string(a) + "," +
                         std::to_string(b) + "," + std::to_string(c) + ")");
      }
    }
  }
  if (!g.labels.empty() && g.labels.size() != static_cast<std::size_t>(m)) {
    throw GroupError("label list has wrong size");
  }
}

}  // namespace

void validate_group(const FiniteGroup& g) {
  validate_structure(g);
  const int m = g.order;
  if (g.inv_table.size() != static_cast<std::size_t>(m)) {
    throw GroupError("inverse table has wrong size");
  }
  for (int a = 0; a < m; ++a) {
    const int b = g.inv(a);
    if (b < 0 || b >= m || g.op(a, b) != 0 || g.op(b, a) != 0) {
      throw GroupError("inverse table wrong at element " + std::to_string(a));
    }
  }
}

// --- serialization ---------------------------------------------------------

namespace {

struct Line {
  std::string text;
  int number;  // 1-based
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  int number = 1;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back({std::string(text.substr(start, end - start)), number});
    ++number;
    if (end == text.size()) break;
    start = end + 1;
  }
  // Drop a trailing empty line from a final newline.
  if (!lines.empty() && lines.back().text.empty()) lines.pop_back();
  return lines;
}

bool is_blank(const std::string& s) {
  return s.find_first_not_of(" \t\r") == std::string::npos;
}

std::vector<std::string> tokenize(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> tokens;
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

long long parse_int(const std::string& token, int line) {
  std::size_t used = 0;
  long long value = 0;
  try {
    value = std::stoll(token, &used);
  } catch (const std::exception&) {
    throw ParseError("expected an integer, got '" + token + "'", line, 1);
  }
  if (used != token.size()) {
    throw ParseError("expected an integer, got '" + token + "'", line, 1);
  }
  return value;
}

}  // namespace

FiniteGroup load_cayley(std::string_view text) {
  const std::vector<Line> lines = split_lines(text);
  std::size_t pos = 0;
  auto next_content_line = [&]() -> const Line* {
    while (pos < lines.size()) {
      const Line& ln = lines[pos];
      if (!is_blank(ln.text)) return &ln;
      ++pos;
    }
    return nullptr;
  };

  const Line* first = next_content_line();
  if (first == nullptr) throw ParseError("empty group file", 1, 1);
  const std::vector<std::string> head = tokenize(first->text);
  if (head.size() != 1) {
    throw ParseError("first line must hold the group order alone", first->number, 1);
  }
  const long long order = parse_int(head[0], first->number);
  if (order < 1 || order > (1 << 20)) {
    throw ParseError("unreasonable group order " + std::to_string(order),
                     first->number, 1);
  }
  ++pos;

  FiniteGroup g;
  g.order = static_cast<int>(order);
  g.op_table.reserve(static_cast<std::size_t>(order) * order);
  for (long long row = 0; row < order; ++row) {
    const Line* ln = next_content_line();
    if (ln == nullptr) {
      throw ParseError("expected " + std::to_string(order) + " table rows, got " +
                       std::to_string(row), lines.empty() ? 1 : lines.back().number, 1);
    }
    const std::vector<std::string> toks = tokenize(ln->text);
    if (toks.size() != static_cast<std::size_t>(order)) {
      throw ParseError("row has " + std::to_string(toks.size()) + " entries, want " +
                       std::to_string(order), ln->number, 1);
    }
    for (const std::string& t : toks) {
      const long long v = parse_int(t, ln->number);
      if (v < 0 || v >= order) {
        throw ParseError("table entry " + std::to_string(v) + " out of range",
                         ln->number, 1);
      }
      g.op_table.push_back(static_cast<int>(v));
    }
    ++pos;
  }

  // Optional trailing label lines: "# label <index> <name>".
  for (; pos < lines.size(); ++pos) {
    const Line& ln = lines[pos];
    if (is_blank(ln.text)) continue;
    std::vector<std::string> toks = tokenize(ln.text);
    if (toks.empty() || toks[0] != "#") {
      throw ParseError("unexpected content after table", ln.number, 1);
    }
    if (toks.size() >= 4 && toks[1] == "label") {
      const long long idx = parse_int(toks[2], ln.number);
      if (idx < 0 || idx >= order) {
        throw ParseError("label index out of range", ln.number, 1);
      }
      if (g.labels.empty()) {
        g.labels.resize(static_cast<std::size_t>(order));
      }
      std::string name = toks[3];
      for (std::size_t i = 4; i < toks.size(); ++i) name += " " + toks[i];
      g.labels[static_cast<std::size_t>(idx)] = name;
    }
    // Other comment lines are ignored.
  }

  validate_structure(g);
  fill_inverses(g);
  return g;
}

std::string serialize_cayley(const FiniteGroup& g) {
  std::string out = std::to_string(g.order) + "\n";
  for (int a = 0; a < g.order; ++a) {
    for (int b = 0; b < g.order; ++b) {
      if (b) out += ' ';
      out += std::to_string(g.op(a, b));
    }
    out += '\n';
  }
  if (!g.labels.empty()) {
    for (int i = 0; i < g.order; ++i) {
      if (g.labels[static_cast<std::size_t>(i)].empty()) continue;
      out += "# label " + std::to_string(i) + " " +
             g.labels[static_cast<std::size_t>(i)] + "\n";
    }
  }
  return out;
}

Presentation parse_presentation(std::string_view text) {
  const std::vector<Line> lines = split_lines(text);
  std::size_t pos = 0;
  while (pos < lines.size() &&
         (is_blank(lines[pos].text) || lines[pos].text[0] == '#')) {
    ++pos;
  }
  if (pos >= lines.size()) throw ParseError("empty presentation file", 1, 1);

  const std::vector<std::string> head = tokenize(lines[pos].text);
  if (head.size() != 1) {
    throw ParseError("first line must hold the generator count alone",
                     lines[pos].number, 1);
  }
  Presentation p;
  const long long ngens = parse_int(head[0], lines[pos].number);
  if (ngens < 1 || ngens > 64) {
    throw ParseError("unreasonable generator count " + std::to_string(ngens),
                     lines[pos].number, 1);
  }
  p.ngens = static_cast<int>(ngens);
  ++pos;

  for (; pos < lines.size(); ++pos) {
    const Line& ln = lines[pos];
    if (is_blank(ln.text) || ln.text[0] == '#') continue;
    Word w;
    for (const std::string& tok : tokenize(ln.text)) {
      Syllable s;
      if (tok.size() < 2 || tok[0] != 'g') {
        throw ParseError("bad syllable '" + tok + "', want g<k>^<e>", ln.number, 1);
      }
      const std::size_t caret = tok.find('^');
      const std::string gen_part = tok.substr(1, caret == std::string::npos
                                                     ? std::string::npos
                                                     : caret - 1);
      s.gen = static_cast<int>(parse_int(gen_part, ln.number));
      s.exp = caret == std::string::npos
                  ? 1
                  : parse_int(tok.substr(caret + 1), ln.number);
      if (s.gen < 0 || s.gen >= p.ngens) {
        throw ParseError("generator g" + std::to_string(s.gen) + " out of range",
                         ln.number, 1);
      }
      if (s.exp == 0) {
        throw ParseError("zero exponent in '" + tok + "'", ln.number, 1);
      }
      w.syllables.push_back(s);
    }
    if (!w.syllables.empty()) p.relators.push_back(std::move(w));
  }
  return p;
}

std::string serialize_presentation(const Presentation& p) {
  std::string out = std::to_string(p.ngens) + "\n";
  for (const Word& w : p.relators) {
    for (std::size_t i = 0; i < w.syllables.size(); ++i) {
      if (i) out += ' ';
      out += "g" + std::to_string(w.syllables[i].gen) + "^" +
             std::to_string(w.syllables[i].exp);
    }
    out += '\n';
  }
  return out;
}

// --- algebraic utilities ----------------------------------------------------

int power(const FiniteGroup& g, int x, long long n) {
  if (n < 0) {
    x = g.inv(x);
    n = -n;
  }
  int acc = FiniteGroup::identity;
  while (n > 0) {
    if (n & 1) acc = g.op(acc, x);
    x = g.op(x, x);
    n >>= 1;
  }
  return acc;
}

int commutator(const FiniteGroup& g, int x, int y) {
  return g.op(g.op(g.op(g.inv(x), g.inv(y)), x), y);
}

ClosureResult subgroup_closure(const FiniteGroup& g, const Subset& s) {
  return subgroup_closure(g, s.elements());
}

ClosureResult subgroup_closure(const FiniteGroup& g,
                               const std::vector<int>& generators) {
  ClosureResult result;
  result.subgroup = Subset(g);
  result.subgroup.insert(FiniteGroup::identity);

  std::vector<int> multipliers;
  for (int x : generators) {
    multipliers.push_back(x);
    if (g.inv(x) != x) multipliers.push_back(g.inv(x));
  }

  std::vector<int> frontier{FiniteGroup::identity};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int x : frontier) {
      for (int m : multipliers) {
        const int y = g.op(x, m);
        if (!result.subgroup.contains(y)) {
          result.subgroup.insert(y);
          next.push_back(y);
        }
      }
    }
    if (!next.empty()) ++result.max_word_length;
    frontier = std::move(next);
  }
  return result;
}

Subset center(const FiniteGroup& g) {
  Subset z(g);
  for (int a = 0; a < g.order; ++a) {
    bool central = true;
    for (int b = 0; b < g.order && central; ++b) {
      central = g.op(a, b) == g.op(b, a);
    }
    if (central) z.insert(a);
  }
  return z;
}

Subset commutator_set(const FiniteGroup& g) {
  Subset s(g);
  for (int a = 0; a < g.order; ++a) {
    for (int b = 0; b < g.order; ++b) {
      s.insert(commutator(g, a, b));
    }
  }
  return s;
}

Subset derived_subgroup(const FiniteGroup& g) {
  return subgroup_closure(g, commutator_set(g)).subgroup;
}

int element_order(const FiniteGroup& g, int x) {
  int acc = x;
  int n = 1;
  while (acc != FiniteGroup::identity) {
    acc = g.op(acc, x);
    ++n;
  }
  return n;
}

std::map<int, int> order_profile(const FiniteGroup& g) {
  std::map<int, int> profile;
  for (int x = 0; x < g.order; ++x) {
    ++profile[element_order(g, x)];
  }
  return profile;
}

}  // namespace grouplog
