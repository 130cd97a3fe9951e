// Copyright 2026 The csumm Authors
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

#ifndef CSUMM_EVAL_HPP_
#define CSUMM_EVAL_HPP_

#include <string>
#include <vector>

#include "csumm/anaphora.hpp"
#include "csumm/compress.hpp"
#include "csumm/corpus.hpp"

namespace csumm {

struct RougeOptions {
  bool stem = false;
  bool drop_stopwords = true;
};

// Clipped n-gram recall: sum over reference types of
// min(count_sys, count_ref) / total reference n-grams, after lowercasing,
// optional stopword removal (before n-gram formation), optional stemming.
// Returns 0 when the reference side has no surviving n-grams.
double rouge_recall(const std::vector<Token>& summary,
                    const std::vector<Token>& reference, int n,
                    RougeOptions options);

// Document-prefix baselines: with sentence_boundary, the longest prefix of
// whole sentences totalling at most k words; otherwise exactly the first
// min(k, len) tokens.
std::vector<Token> baseline_first_k(const Document& doc, int k,
                                    bool sentence_boundary);

// Sentence-extractive baseline maximizing the summed document frequency of
// covered bigram types under budget k, solved exactly.
std::vector<Token> baseline_bigram_coverage(const Document& doc, int k);

struct PositionHistogram {
  std::vector<long> oracle_counts;  // indexed by sentence position
  std::vector<long> prefix_counts;
};

// Per-index counts of sentences chosen by the sentence-level ROUGE-1 oracle
// versus the sentence-boundary prefix baseline, under reference-length
// budgets.
PositionHistogram oracle_sentence_positions(const std::vector<Document>& docs);

struct DocumentScore {
  std::string id;
  double rouge1 = 0.0;
  double rouge2 = 0.0;
  int words = 0;
  int budget = 0;
  bool within_budget = true;
  int orphan_pronouns = 0;
};

struct EvalReport {
  std::vector<DocumentScore> docs;
  double macro_rouge1 = 0.0;
  double macro_rouge2 = 0.0;
  int orphan_total = 0;
  bool all_within_budget = true;
};

// A decoded summary in a form the evaluator can re-check: the selected
// units/replacements under a given derivation plus the rendered tokens.
struct SummaryRecord {
  std::string id;
  std::vector<int> unit_ids;
  std::vector<std::pair<int, int>> replacements;  // (unit, ordinal)
  std::vector<Token> tokens;
  double objective = 0.0;
  int budget = 0;
};

struct OrphanCheckConfig {
  UnitMode mode = UnitMode::kFull;
  double alpha = 0.8;
  double beta = 0.6;
};

// Counts included pronouns left without support: not rewritten, no included
// unit holding a non-pronominal mention of the predicted entity, no earlier
// applied rewrite of that entity, and included candidate mass below beta.
int count_orphan_pronouns(const Document& doc,
                          const std::vector<TextualUnit>& units,
                          const std::vector<int>& selected_unit_ids,
                          const std::vector<std::pair<int, int>>& replacements,
                          double beta);

EvalReport evaluate(const std::vector<Document>& docs,
                    const std::vector<SummaryRecord>& summaries,
                    const OrphanCheckConfig& check, RougeOptions rouge);

EvalReport evaluate_token_summaries(
    const std::vector<Document>& docs,
    const std::vector<std::vector<Token>>& summaries,
    const std::vector<int>& budgets, RougeOptions rouge);

std::string report_to_json(const EvalReport& report);
std::string report_to_table(const EvalReport& report);

}  // namespace csumm

#endif  // CSUMM_EVAL_HPP_
