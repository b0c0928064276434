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

#ifndef GROUPLOG_HARNESS_HPP
#define GROUPLOG_HARNESS_HPP

#include <string>
#include <vector>

#include "grouplog/eval.hpp"
#include "grouplog/gen.hpp"
#include "grouplog/group.hpp"
#include "grouplog/iso.hpp"

namespace grouplog {

struct CorpusEntry {
  std::string name;
  FiniteGroup group;
};

struct Corpus {
  std::vector<CorpusEntry> entries;  // names unique, sorted
  const FiniteGroup* find(const std::string& name) const;
};

// Deterministic corpus: all cyclic groups up to max_order, every abelian
// group of orders 4/8/16/27, dihedral 3..8, quaternion8, S3/S4/A4/A5,
// UT3(2..4) and a few direct products — each included only when its order
// fits.  Contains both order-4 groups and all five order-8 groups.
Corpus corpus_build(int max_order);

struct ReportRow {
  std::string sort_key_primary;    // sentence id (or family:param for lengths)
  std::string sort_key_secondary;  // group name (empty for lengths)
  std::string json;                // serialized row object, one line
  bool ok = true;                  // this row meets its suite's requirement
};

struct Report {
  std::string kind;  // soundness | uniqueness | lengths | eval
  int schema_version = 1;
  std::vector<std::string> header_notes;
  std::vector<ReportRow> rows;  // sorted by (primary, secondary) key
  bool passed = true;           // all rows ok
  double max_ratio = 0.0;       // lengths runs only
};

// Serialized forms.  JSONL: one header object line, then one line per row.
// CSV: flat summary table.  Both are byte-deterministic for a given corpus
// and flag set (timings are never serialized).
std::string to_jsonl(const Report& report);
std::string to_csv(const Report& report);

// H |= psi_H for each sentence, evaluated on the sentence's target group.
// Rows carry verdicts and evaluator statistics; a false or budget-exceeded
// verdict fails the report.
Report verify_soundness(const std::vector<FamilySentence>& sentences,
                        const EvalOptions& options = {}, int threads = 1);

// Every (sentence, corpus group) cell: grounded satisfaction compared with
// the isomorphism oracle against the sentence's target.  Passes iff the two
// columns agree everywhere and no cell exceeded the budget.
Report verify_uniqueness(const std::vector<FamilySentence>& sentences,
                         const Corpus& corpus, const EvalOptions& options = {},
                         int threads = 1);

// Length-scaling rows for one family over [lo, hi]: no evaluation, only
// generation and measurement.  Families: cyclic2 (n = lo..hi), symmetric
// (ratio against n·log2 n; the built-in presentation grows as n log n, so
// this family is measured against its own bound rather than log2|H|), theta
// (ratio against the bit count), abelian / ut3 (`samples` seeded random
// instances with |H| resp. n in [lo, hi]).
Report length_report(const std::string& family, long long lo, long long hi,
                     int samples = 50, unsigned seed = 12345);

// --- file interchange --------------------------------------------------------

// Sentence files: <id>.fo holds the canonical formula text; <id>.json holds
// {id, family, params, target_order, target, notes, length}.
void write_sentence(const std::string& dir, const FamilySentence& sentence);
std::vector<FamilySentence> load_sentences(const std::string& dir);

// Corpus files: one <name>.cay Cayley file per entry.
void write_corpus(const std::string& dir, const Corpus& corpus);
Corpus load_corpus(const std::string& dir);

}  // namespace grouplog

#endif  // GROUPLOG_HARNESS_HPP
