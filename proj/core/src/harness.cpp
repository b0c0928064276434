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

#include "grouplog/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <utility>

#include "grouplog/errors.hpp"
#include "json.hpp"

namespace grouplog {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::string join_params(const std::vector<long long>& params) {
  std::string out;
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i > 0) out += "x";
    out += std::to_string(params[i]);
  }
  return out;
}

// Corpus-style name for a group descriptor, so that a sentence's target and
// the corpus entry built from the same descriptor line up by name.
std::string descriptor_name(const GroupDescriptor& d) {
  if (d.family == "cyclic") return "cyclic_" + join_params(d.params);
  if (d.family == "abelian") return "abelian_" + join_params(d.params);
  if (d.family == "symmetric") return "sym_" + join_params(d.params);
  if (d.family == "alternating") return "alt_" + join_params(d.params);
  if (d.family == "dihedral") return "dihedral_" + join_params(d.params);
  if (d.family == "quaternion8") return "quaternion_8";
  if (d.family == "ut3") return "ut3_" + join_params(d.params);
  if (d.family.empty()) return "none";
  return d.family + "_" + join_params(d.params);
}

ordered_json stats_json(const EvalStats& st) {
  // wall_time is intentionally omitted: reports must be byte-deterministic.
  ordered_json j;
  j["nodes"] = st.nodes_visited;
  j["relations"] = st.relations_built;
  j["max_rows"] = st.max_relation_rows;
  j["mode"] = st.mode;
  return j;
}

// Runs job(0..njobs-1), either inline or on a small async pool.  Jobs write
// into index-addressed slots, so the assembled output is independent of the
// interleaving.
void run_cells(int threads, int njobs, const std::function<void(int)>& job) {
  if (threads <= 1 || njobs <= 1) {
    for (int i = 0; i < njobs; ++i) job(i);
    return;
  }
  std::atomic<int> next{0};
  const int workers = std::min(threads, njobs);
  std::vector<std::future<void>> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.push_back(std::async(std::launch::async, [&]() {
      for (int i = next.fetch_add(1); i < njobs; i = next.fetch_add(1)) job(i);
    }));
  }
  for (auto& f : pool) f.get();
}

void sort_rows(Report& report) {
  std::sort(report.rows.begin(), report.rows.end(),
            [](const ReportRow& a, const ReportRow& b) {
              if (a.sort_key_primary != b.sort_key_primary) {
                return a.sort_key_primary < b.sort_key_primary;
              }
              return a.sort_key_secondary < b.sort_key_secondary;
            });
  report.passed = true;
  for (const ReportRow& row : report.rows) report.passed = report.passed && row.ok;
}

std::string padded(long long value, int width) {
  std::string digits = std::to_string(value);
  if (static_cast<int>(digits.size()) < width) {
    digits.insert(digits.begin(), static_cast<std::size_t>(width) - digits.size(), '0');
  }
  return digits;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GroupError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw GroupError("cannot write " + path.string());
}

}  // namespace

const FiniteGroup* Corpus::find(const std::string& name) const {
  auto it = std::lower_bound(
      entries.begin(), entries.end(), name,
      [](const CorpusEntry& e, const std::string& key) { return e.name < key; });
  if (it == entries.end() || it->name != name) return nullptr;
  return &it->group;
}

Corpus corpus_build(int max_order) {
  if (max_order < 1 || max_order > kIsoOrderCap) {
    throw GroupError("corpus max_order must be in [1, " +
                     std::to_string(kIsoOrderCap) + "], got " +
                     std::to_string(max_order));
  }
  Corpus corpus;
  auto add = [&corpus](std::string name, FiniteGroup g) {
    validate_group(g);
    corpus.entries.push_back({std::move(name), std::move(g)});
  };

  for (int n = 1; n <= max_order; ++n) {
    add("cyclic_" + std::to_string(n), cyclic_group(n));
  }
  // Every non-cyclic abelian group of orders 4, 8, 16 and 27, by partition.
  const std::vector<std::vector<long long>> abelian_lists = {
      {2, 2},           // 4
      {2, 4},           // 8
      {2, 2, 2},        // 8
      {2, 8},           // 16
      {4, 4},           // 16
      {2, 2, 4},        // 16
      {2, 2, 2, 2},     // 16
      {3, 9},           // 27
      {3, 3, 3},        // 27
  };
  for (const auto& qs : abelian_lists) {
    long long order = 1;
    for (long long q : qs) order *= q;
    if (order <= max_order) add("abelian_" + join_params(qs), abelian_group(qs));
  }
  for (int n = 3; n <= 8; ++n) {
    if (2 * n <= max_order) add("dihedral_" + std::to_string(n), dihedral_group(n));
  }
  if (8 <= max_order) add("quaternion_8", quaternion_group());
  if (6 <= max_order) add("sym_3", symmetric_group(3));
  if (24 <= max_order) add("sym_4", symmetric_group(4));
  if (12 <= max_order) add("alt_4", alternating_group(4));
  if (60 <= max_order) add("alt_5", alternating_group(5));
  for (long long n = 2; n <= 4; ++n) {
    if (n * n * n <= max_order) {
      add("ut3_" + std::to_string(n), ut3_group(n));
    }
  }
  // Direct-product rebuilds of groups the corpus also contains via other
  // constructors, so iso-invariance of the sentences gets exercised.
  if (8 <= max_order) {
    add("product_c2_c4", direct_product(cyclic_group(2), cyclic_group(4)));
  }
  if (12 <= max_order) {
    add("product_c2_s3", direct_product(cyclic_group(2), symmetric_group(3)));
  }
  if (16 <= max_order) {
    add("product_c2_q8", direct_product(cyclic_group(2), quaternion_group()));
  }
  if (27 <= max_order) {
    add("product_c3_c9", direct_product(cyclic_group(3), cyclic_group(9)));
  }

  std::sort(corpus.entries.begin(), corpus.entries.end(),
            [](const CorpusEntry& a, const CorpusEntry& b) { return a.name < b.name; });
  for (std::size_t i = 1; i < corpus.entries.size(); ++i) {
    if (corpus.entries[i].name == corpus.entries[i - 1].name) {
      throw GroupError("duplicate corpus name: " + corpus.entries[i].name);
    }
  }
  return corpus;
}

Report verify_soundness(const std::vector<FamilySentence>& sentences,
                        const EvalOptions& options, int threads) {
  Report report;
  report.kind = "soundness";
  report.rows.resize(sentences.size());
  run_cells(threads, static_cast<int>(sentences.size()), [&](int i) {
    const FamilySentence& s = sentences[static_cast<std::size_t>(i)];
    const std::string group_name = descriptor_name(s.target);
    std::optional<bool> verdict;
    std::optional<EvalStats> stats;
    bool budget_exceeded = false;
    std::string error;
    long long order = 0;
    try {
      if (s.target.family.empty()) {
        throw GroupError("sentence " + s.id + " has no constructible target");
      }
      FiniteGroup h = build_group(s.target);
      order = h.order;
      GroundedResult r = eval_sentence_grounded(h, s.formula, options);
      verdict = r.satisfied;
      stats = r.stats;
    } catch (const BudgetError& e) {
      budget_exceeded = true;
      error = e.what();
    } catch (const std::exception& e) {
      error = e.what();
    }

    const bool ok = verdict.has_value() && *verdict && !budget_exceeded;
    ordered_json j;
    j["sentence"] = s.id;
    j["family"] = s.family;
    j["params"] = s.params;
    j["group"] = group_name;
    j["order"] = order;
    j["length"] = s.length;
    if (verdict.has_value()) {
      j["verdict"] = *verdict;
    } else {
      j["verdict"] = nullptr;
    }
    j["budget_exceeded"] = budget_exceeded;
    if (stats.has_value()) j["stats"] = stats_json(*stats);
    if (!error.empty()) j["error"] = error;
    j["ok"] = ok;
    report.rows[static_cast<std::size_t>(i)] = ReportRow{s.id, group_name, j.dump(), ok};
  });
  sort_rows(report);
  return report;
}

Report verify_uniqueness(const std::vector<FamilySentence>& sentences,
                         const Corpus& corpus, const EvalOptions& options,
                         int threads) {
  Report report;
  report.kind = "uniqueness";
  const int ngroups = static_cast<int>(corpus.entries.size());
  const int njobs = static_cast<int>(sentences.size()) * ngroups;
  report.rows.resize(static_cast<std::size_t>(njobs));

  std::vector<std::optional<FiniteGroup>> targets(sentences.size());
  std::vector<std::string> target_errors(sentences.size());
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    try {
      if (sentences[i].target.family.empty()) {
        throw GroupError("sentence " + sentences[i].id +
                         " has no constructible target");
      }
      targets[i] = build_group(sentences[i].target);
    } catch (const std::exception& e) {
      target_errors[i] = e.what();
    }
  }

  run_cells(threads, njobs, [&](int idx) {
    const std::size_t si = static_cast<std::size_t>(idx / ngroups);
    const std::size_t gi = static_cast<std::size_t>(idx % ngroups);
    const FamilySentence& s = sentences[si];
    const CorpusEntry& entry = corpus.entries[gi];

    std::optional<bool> satisfied;
    std::optional<bool> iso;
    std::optional<EvalStats> stats;
    bool budget_exceeded = false;
    std::string error;

    try {
      GroundedResult r = eval_sentence_grounded(entry.group, s.formula, options);
      satisfied = r.satisfied;
      stats = r.stats;
    } catch (const BudgetError& e) {
      budget_exceeded = true;
      error = e.what();
    } catch (const std::exception& e) {
      error = e.what();
    }

    if (targets[si].has_value()) {
      try {
        iso = isomorphic(entry.group, *targets[si]).isomorphic;
      } catch (const std::exception& e) {
        if (entry.group.order != targets[si]->order) {
          iso = false;  // distinct orders decide even past the oracle's cap
        } else if (error.empty()) {
          error = e.what();
        }
      }
    } else if (error.empty()) {
      error = target_errors[si];
    }

    const bool comparable = satisfied.has_value() && iso.has_value();
    const bool agree = comparable && *satisfied == *iso;
    const bool ok = agree && !budget_exceeded;

    ordered_json j;
    j["sentence"] = s.id;
    j["group"] = entry.name;
    j["order"] = entry.group.order;
    if (satisfied.has_value()) {
      j["satisfied"] = *satisfied;
    } else {
      j["satisfied"] = nullptr;
    }
    if (iso.has_value()) {
      j["isomorphic"] = *iso;
    } else {
      j["isomorphic"] = nullptr;
    }
    if (comparable) {
      j["agree"] = agree;
    } else {
      j["agree"] = nullptr;
    }
    j["budget_exceeded"] = budget_exceeded;
    if (stats.has_value()) j["stats"] = stats_json(*stats);
    if (!error.empty()) j["error"] = error;
    j["ok"] = ok;
    report.rows[static_cast<std::size_t>(idx)] = ReportRow{s.id, entry.name, j.dump(), ok};
  });
  sort_rows(report);
  return report;
}

namespace {

// One lengths row; `baseline` is the family's denominator (log2 of the
// target order unless documented otherwise).
void push_length_row(Report& report, const std::string& key,
                     const std::string& family,
                     const std::vector<long long>& params, long long order,
                     LengthCount len, double baseline) {
  const double ratio = static_cast<double>(len) / baseline;
  ordered_json j;
  j["family"] = family;
  j["params"] = params;
  j["order"] = order;
  j["length"] = len;
  j["baseline"] = baseline;
  j["ratio"] = ratio;
  report.rows.push_back(ReportRow{key, "", j.dump(), true});
  report.max_ratio = std::max(report.max_ratio, ratio);
}

std::vector<long long> sample_abelian_list(std::mt19937& rng, long long lo,
                                           long long hi) {
  static const long long primes[] = {2, 3, 5, 7, 11, 13};
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<long long> qs;
    long long order = 1;
    while (true) {
      std::vector<long long> fits;
      for (long long p : primes) {
        for (long long q = p; order <= hi / q; q *= p) {
          fits.push_back(q);
          if (q > hi / p) break;
        }
      }
      if (fits.empty()) break;
      qs.push_back(fits[rng() % fits.size()]);
      order *= qs.back();
      if (order >= lo && rng() % 3 == 0) break;
    }
    if (!qs.empty() && order >= lo && order <= hi) return qs;
  }
  throw GroupError("abelian length sampler: no instance in range");
}

}  // namespace

Report length_report(const std::string& family, long long lo, long long hi,
                     int samples, unsigned seed) {
  if (lo > hi) throw GroupError("length_report: empty range");
  Report report;
  report.kind = "lengths";

  if (family == "cyclic2") {
    if (lo < 1) throw GroupError("cyclic2 lengths need n >= 1");
    for (long long n = lo; n <= hi; ++n) {
      FamilySentence s = sentence_cyclic2(static_cast<int>(n));
      push_length_row(report, "cyclic2:" + padded(n, 6), s.family, s.params,
                      s.target_order, s.length, static_cast<double>(n));
    }
  } else if (family == "symmetric") {
    report.header_notes.push_back(
        "symmetric baseline is n*log2(n): the built-in presentation grows as "
        "n log n rather than log2(n!)");
    for (long long n = std::max<long long>(lo, 3); n <= hi; ++n) {
      FamilySentence s = sentence_symmetric(static_cast<int>(n));
      const double baseline =
          static_cast<double>(n) * std::log2(static_cast<double>(n));
      push_length_row(report, "symmetric:" + padded(n, 6), s.family, s.params,
                      s.target_order, s.length, baseline);
    }
  } else if (family == "theta") {
    if (lo < 1) throw GroupError("theta lengths need n >= 1");
    for (long long n = lo; n <= hi; ++n) {
      int bits = 0;
      for (long long v = n; v > 0; v >>= 1) ++bits;
      push_length_row(report, "theta:" + padded(n, 6), "theta", {n}, n,
                      length(theta(n)), static_cast<double>(bits));
    }
  } else if (family == "abelian") {
    if (lo < 2) throw GroupError("abelian lengths need orders >= 2");
    std::mt19937 rng(seed);
    for (int k = 0; k < samples; ++k) {
      std::vector<long long> qs = sample_abelian_list(rng, lo, hi);
      FamilySentence s = sentence_abelian(qs);
      push_length_row(report, "abelian:" + padded(k, 4), s.family, s.params,
                      s.target_order,
                      s.length, std::log2(static_cast<double>(s.target_order)));
    }
  } else if (family == "ut3") {
    if (lo < 2) throw GroupError("ut3 lengths need n >= 2");
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> exp_dist(
        std::log2(static_cast<double>(lo)), std::log2(static_cast<double>(hi)));
    for (int k = 0; k < samples; ++k) {
      long long n = std::llround(std::exp2(exp_dist(rng)));
      n = std::max(lo, std::min(hi, n));
      FamilySentence s = sentence_ut3(n);
      push_length_row(report, "ut3:" + padded(k, 4), s.family, s.params,
                      s.target_order, s.length,
                      3.0 * std::log2(static_cast<double>(n)));
    }
  } else {
    throw GroupError("length_report: unknown family " + family);
  }

  sort_rows(report);
  return report;
}

std::string to_jsonl(const Report& report) {
  ordered_json header;
  header["schema_version"] = report.schema_version;
  header["kind"] = report.kind;
  header["rows"] = report.rows.size();
  header["passed"] = report.passed;
  if (report.kind == "lengths") header["max_ratio"] = report.max_ratio;
  if (!report.header_notes.empty()) header["notes"] = report.header_notes;
  std::string out = header.dump();
  out += "\n";
  for (const ReportRow& row : report.rows) {
    out += row.json;
    out += "\n";
  }
  return out;
}

namespace {

std::string csv_cell(const ordered_json& row, const std::string& key) {
  if (!row.contains(key) || row[key].is_null()) return "";
  const ordered_json& v = row[key];
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) return join_params(v.get<std::vector<long long>>());
  return v.dump();
}

}  // namespace

std::string to_csv(const Report& report) {
  std::vector<std::string> cols;
  if (report.kind == "uniqueness") {
    cols = {"sentence", "group",           "order", "satisfied",
            "isomorphic", "agree", "budget_exceeded", "ok"};
  } else if (report.kind == "lengths") {
    cols = {"family", "params", "order", "length", "baseline", "ratio"};
  } else {  // soundness | eval
    cols = {"sentence", "group", "order", "length", "verdict",
            "budget_exceeded", "ok"};
  }
  std::string out;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i > 0) out += ",";
    out += cols[i];
  }
  out += "\n";
  for (const ReportRow& row : report.rows) {
    const ordered_json j = ordered_json::parse(row.json);
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (i > 0) out += ",";
      out += csv_cell(j, cols[i]);
    }
    out += "\n";
  }
  return out;
}

void write_sentence(const std::string& dir, const FamilySentence& sentence) {
  fs::create_directories(dir);
  write_file(fs::path(dir) / (sentence.id + ".fo"), print(sentence.formula) + "\n");
  ordered_json j;
  j["id"] = sentence.id;
  j["family"] = sentence.family;
  j["params"] = sentence.params;
  j["target_order"] = sentence.target_order;
  j["target"] = {{"family", sentence.target.family},
                 {"params", sentence.target.params}};
  j["notes"] = sentence.notes;
  j["length"] = sentence.length;
  write_file(fs::path(dir) / (sentence.id + ".json"), j.dump(2) + "\n");
}

std::vector<FamilySentence> load_sentences(const std::string& dir) {
  if (!fs::is_directory(dir)) throw GroupError("not a directory: " + dir);
  std::vector<fs::path> metas;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().extension() == ".json") metas.push_back(e.path());
  }
  std::sort(metas.begin(), metas.end());
  std::vector<FamilySentence> out;
  for (const fs::path& meta : metas) {
    ordered_json j;
    try {
      j = ordered_json::parse(read_file(meta));
    } catch (const nlohmann::json::exception& e) {
      throw GroupError(meta.string() + ": " + e.what());
    }
    FamilySentence s;
    try {
      s.id = j.at("id").get<std::string>();
      s.family = j.at("family").get<std::string>();
      s.params = j.at("params").get<std::vector<long long>>();
      s.target_order = j.at("target_order").get<long long>();
      s.target.family = j.at("target").at("family").get<std::string>();
      s.target.params = j.at("target").at("params").get<std::vector<long long>>();
      s.notes = j.at("notes").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw GroupError(meta.string() + ": " + e.what());
    }
    const fs::path fo = meta.parent_path() / (s.id + ".fo");
    s.formula = parse_formula(read_file(fo));
    s.length = length(s.formula);
    if (j.contains("length") && j["length"].get<LengthCount>() != s.length) {
      throw GroupError(meta.string() + ": recorded length " +
                       j["length"].dump() + " does not match formula length " +
                       std::to_string(s.length));
    }
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(),
            [](const FamilySentence& a, const FamilySentence& b) { return a.id < b.id; });
  return out;
}

void write_corpus(const std::string& dir, const Corpus& corpus) {
  fs::create_directories(dir);
  for (const CorpusEntry& entry : corpus.entries) {
    write_file(fs::path(dir) / (entry.name + ".cay"), serialize_cayley(entry.group));
  }
}

Corpus load_corpus(const std::string& dir) {
  if (!fs::is_directory(dir)) throw GroupError("not a directory: " + dir);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().extension() == ".cay") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  Corpus corpus;
  for (const fs::path& file : files) {
    FiniteGroup g = load_cayley(read_file(file));
    validate_group(g);
    corpus.entries.push_back({file.stem().string(), std::move(g)});
  }
  return corpus;
}

}  // namespace grouplog
