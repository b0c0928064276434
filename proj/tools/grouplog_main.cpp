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

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "grouplog/ast.hpp"
#include "grouplog/errors.hpp"
#include "grouplog/eval.hpp"
#include "grouplog/gen.hpp"
#include "grouplog/group.hpp"
#include "grouplog/harness.hpp"
#include "grouplog/iso.hpp"

namespace {

using grouplog::EvalOptions;
using grouplog::EvalStats;
using grouplog::FamilySentence;
using nlohmann::ordered_json;

// Exit codes: 0 = pass, 1 = verification failure, 2 = usage/IO error.
constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw grouplog::GroupError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw grouplog::GroupError("cannot write " + path);
}

long long to_ll(const std::string& text) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &pos);
  } catch (const std::exception&) {
    throw grouplog::GroupError("not an integer: " + text);
  }
  if (pos != text.size()) throw grouplog::GroupError("not an integer: " + text);
  return v;
}

ordered_json stats_json(const EvalStats& st) {
  ordered_json j;
  j["nodes"] = st.nodes_visited;
  j["relations"] = st.relations_built;
  j["max_rows"] = st.max_relation_rows;
  j["mode"] = st.mode;
  return j;
}

FamilySentence generate(const std::string& family,
                        const std::vector<std::string>& params) {
  if (family == "cyclic2") {
    if (params.size() != 1) throw grouplog::GroupError("cyclic2 takes one parameter n");
    return grouplog::sentence_cyclic2(static_cast<int>(to_ll(params[0])));
  }
  if (family == "abelian") {
    if (params.empty()) throw grouplog::GroupError("abelian takes prime powers q1 q2 ...");
    std::vector<long long> qs;
    for (const std::string& p : params) qs.push_back(to_ll(p));
    return grouplog::sentence_abelian(qs);
  }
  if (family == "symmetric") {
    if (params.size() != 1) throw grouplog::GroupError("symmetric takes one parameter n");
    return grouplog::sentence_symmetric(static_cast<int>(to_ll(params[0])));
  }
  if (family == "ut3") {
    if (params.size() != 1) throw grouplog::GroupError("ut3 takes one parameter n");
    return grouplog::sentence_ut3(to_ll(params[0]));
  }
  if (family == "simple") {
    if (params.size() == 1 && params[0] == "a5") return grouplog::sentence_simple_a5();
    throw grouplog::GroupError("simple supports the built-in instance: simple a5");
  }
  throw grouplog::GroupError(
      "unknown family " + family +
      " (expected cyclic2 | abelian | symmetric | ut3 | simple)");
}

struct GenArgs {
  std::string family;
  std::vector<std::string> params;
  std::string out_dir;
};

struct EvalArgs {
  std::string formula_file;
  std::string group_file;
  std::string mode = "grounded";
  long long budget = 0;
  bool force = false;
};

struct IsoArgs {
  std::string file_a;
  std::string file_b;
};

struct CorpusArgs {
  int max_order = 64;
  std::string out_dir;
};

struct VerifyArgs {
  std::string sentences_dir;
  std::string corpus_dir;
  std::string out_file;
  long long budget = 0;
  int threads = 1;
};

struct LengthsArgs {
  std::string family;
  std::string range;
  std::string out_file;
  int samples = 50;
  unsigned seed = 12345;
};

int run_gen(const GenArgs& args) {
  FamilySentence s = generate(args.family, args.params);
  if (args.out_dir.empty()) {
    std::cout << grouplog::print(s.formula) << "\n";
  } else {
    grouplog::write_sentence(args.out_dir, s);
    ordered_json j;
    j["id"] = s.id;
    j["target_order"] = s.target_order;
    j["length"] = s.length;
    std::cout << j.dump() << "\n";
  }
  return kPass;
}

int run_eval(const EvalArgs& args) {
  grouplog::FormulaPtr f = grouplog::parse_formula(read_file(args.formula_file));
  grouplog::FiniteGroup g = grouplog::load_cayley(read_file(args.group_file));
  grouplog::validate_group(g);
  EvalOptions options;
  options.budget = args.budget;
  options.force = args.force;

  ordered_json j;
  j["formula"] = args.formula_file;
  j["group"] = args.group_file;
  j["order"] = g.order;
  bool satisfied = false;
  if (args.mode == "naive") {
    EvalStats stats;
    satisfied = grouplog::eval(g, f, {}, options, &stats);
    j["satisfied"] = satisfied;
    j["stats"] = stats_json(stats);
  } else if (args.mode == "grounded") {
    grouplog::GroundedResult r = grouplog::eval_sentence_grounded(g, f, options);
    satisfied = r.satisfied;
    j["satisfied"] = satisfied;
    if (!r.witness.empty()) {
      ordered_json w = ordered_json::array();
      for (const auto& [var, value] : r.witness) {
        w.push_back({{"var", var}, {"value", value}});
      }
      j["witness"] = w;
    }
    j["stats"] = stats_json(r.stats);
  } else {
    throw grouplog::GroupError("unknown mode " + args.mode +
                               " (expected naive | grounded)");
  }
  std::cout << j.dump() << "\n";
  return satisfied ? kPass : kFail;
}

int run_iso(const IsoArgs& args) {
  grouplog::FiniteGroup a = grouplog::load_cayley(read_file(args.file_a));
  grouplog::FiniteGroup b = grouplog::load_cayley(read_file(args.file_b));
  grouplog::validate_group(a);
  grouplog::validate_group(b);
  grouplog::IsoResult r = grouplog::isomorphic(a, b);
  ordered_json j;
  j["isomorphic"] = r.isomorphic;
  if (r.invariant_mismatch.has_value()) {
    j["invariant_mismatch"] = *r.invariant_mismatch;
  }
  if (r.mapping.has_value()) j["mapping"] = *r.mapping;
  std::cout << j.dump() << "\n";
  return r.isomorphic ? kPass : kFail;
}

int run_corpus_build(const CorpusArgs& args) {
  grouplog::Corpus corpus = grouplog::corpus_build(args.max_order);
  grouplog::write_corpus(args.out_dir, corpus);
  ordered_json j;
  j["entries"] = corpus.entries.size();
  j["dir"] = args.out_dir;
  std::cout << j.dump() << "\n";
  return kPass;
}

int run_verify(const std::string& suite, const VerifyArgs& args) {
  std::vector<FamilySentence> sentences = grouplog::load_sentences(args.sentences_dir);
  EvalOptions options;
  options.budget = args.budget;
  grouplog::Report report;
  if (suite == "soundness") {
    report = grouplog::verify_soundness(sentences, options, args.threads);
  } else {
    grouplog::Corpus corpus = grouplog::load_corpus(args.corpus_dir);
    report = grouplog::verify_uniqueness(sentences, corpus, options, args.threads);
  }
  const std::string text = grouplog::to_jsonl(report);
  if (args.out_file.empty()) {
    std::cout << text;
  } else {
    write_file(args.out_file, text);
  }
  return report.passed ? kPass : kFail;
}

int run_lengths(const LengthsArgs& args) {
  const std::size_t sep = args.range.find("..");
  if (sep == std::string::npos) {
    throw grouplog::GroupError("range must look like a..b, got " + args.range);
  }
  const long long lo = to_ll(args.range.substr(0, sep));
  const long long hi = to_ll(args.range.substr(sep + 2));
  grouplog::Report report =
      grouplog::length_report(args.family, lo, hi, args.samples, args.seed);
  const std::string text = grouplog::to_csv(report);
  if (args.out_file.empty()) {
    std::cout << text;
  } else {
    write_file(args.out_file, text);
  }
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"grouplog: compile finite groups to short first-order sentences"};
  app.require_subcommand(1);

  auto gen_args = std::make_shared<GenArgs>();
  auto eval_args = std::make_shared<EvalArgs>();
  auto iso_args = std::make_shared<IsoArgs>();
  auto corpus_args = std::make_shared<CorpusArgs>();
  auto verify_args = std::make_shared<VerifyArgs>();
  auto lengths_args = std::make_shared<LengthsArgs>();
  int rc = kPass;

  CLI::App* gen = app.add_subcommand(
      "gen", "Generate a family sentence (prints the formula or writes <id>.fo/.json)");
  gen->add_option("family", gen_args->family,
                  "cyclic2 | abelian | symmetric | ut3 | simple")->required();
  gen->add_option("params", gen_args->params, "family parameters")->required();
  gen->add_option("-o,--out", gen_args->out_dir, "sentence directory to write into");
  gen->callback([&, gen_args]() { rc = run_gen(*gen_args); });

  CLI::App* ev = app.add_subcommand("eval", "Evaluate a formula file over a Cayley file");
  ev->add_option("formula", eval_args->formula_file, "formula (.fo) file")->required();
  ev->add_option("group", eval_args->group_file, "Cayley (.cay) file")->required();
  ev->add_option("--mode", eval_args->mode, "naive | grounded (default grounded)");
  ev->add_option("--budget", eval_args->budget,
                 "estimated-step budget (default GROUPLOG_BUDGET or 1e9)");
  ev->add_flag("--force", eval_args->force, "evaluate even past the budget estimate");
  ev->callback([&, eval_args]() { rc = run_eval(*eval_args); });

  CLI::App* iso = app.add_subcommand("iso", "Decide isomorphism of two Cayley files");
  iso->add_option("a", iso_args->file_a, "first Cayley file")->required();
  iso->add_option("b", iso_args->file_b, "second Cayley file")->required();
  iso->callback([&, iso_args]() { rc = run_iso(*iso_args); });

  CLI::App* corpus = app.add_subcommand("corpus", "Corpus management");
  corpus->require_subcommand(1);
  CLI::App* corpus_build_cmd =
      corpus->add_subcommand("build", "Build the deterministic corpus into a directory");
  corpus_build_cmd->add_option("--max-order", corpus_args->max_order,
                               "largest group order (default 64)");
  corpus_build_cmd->add_option("-o,--out", corpus_args->out_dir, "output directory")
      ->required();
  corpus_build_cmd->callback([&, corpus_args]() { rc = run_corpus_build(*corpus_args); });

  CLI::App* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->require_subcommand(1);
  for (const std::string suite : {"soundness", "uniqueness"}) {
    CLI::App* sub = verify->add_subcommand(
        suite, suite == "soundness" ? "target groups satisfy their sentences"
                                    : "satisfaction matches the isomorphism oracle");
    sub->add_option("--sentences", verify_args->sentences_dir, "sentence directory")
        ->required();
    if (suite == "uniqueness") {
      sub->add_option("--corpus", verify_args->corpus_dir, "corpus directory")->required();
    }
    sub->add_option("-o,--out", verify_args->out_file, "report file (JSON Lines)");
    sub->add_option("--budget", verify_args->budget, "estimated-step budget per cell");
    sub->add_option("--threads", verify_args->threads, "parallel cells (default 1)");
    sub->callback([&, verify_args, suite]() { rc = run_verify(suite, *verify_args); });
  }

  CLI::App* lengths = app.add_subcommand("lengths", "Length-scaling report (CSV)");
  lengths->add_option("family", lengths_args->family,
                      "cyclic2 | symmetric | theta | abelian | ut3")->required();
  lengths->add_option("--range", lengths_args->range, "parameter range a..b")->required();
  lengths->add_option("-o,--out", lengths_args->out_file, "CSV output file");
  lengths->add_option("--samples", lengths_args->samples,
                      "sample count for randomized families (default 50)");
  lengths->add_option("--seed", lengths_args->seed, "sampler seed (default 12345)");
  lengths->callback([&, lengths_args]() { rc = run_lengths(*lengths_args); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  } catch (const grouplog::BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return rc;
}
