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

#ifndef CSUMM_PIPELINE_HPP_
#define CSUMM_PIPELINE_HPP_

#include <string>
#include <vector>

#include "csumm/eval.hpp"
#include "csumm/learn.hpp"

namespace csumm {

enum class BudgetPolicy { kReferenceLength, kFixed };

// Run-wide settings shared by every command; string-keyed so the C API and
// config files can populate it uniformly.
struct RunConfig {
  UnitMode mode = UnitMode::kFull;
  bool anaphora = true;
  double alpha = 0.8;
  double beta = 0.6;
  double step_size = 0.1;
  double l1_strength = 1e-8;
  int epochs = 10;
  uint64_t seed = 1;
  BudgetPolicy budget_policy = BudgetPolicy::kReferenceLength;
  int budget_k = 0;
  int jobs = 1;
  int min_ref_words = 0;
  int max_edus = 0;  // 0 = unlimited
  bool stem = true;
  bool drop_stopwords = true;
  FeatureGroups groups;
  std::string stopwords_path;

  // Parses one key=value pair; throws ValidationError for unknown keys or
  // out-of-range values.
  void set(const std::string& key, const std::string& value);
  void load_config_file(const std::string& path);

  TrainOptions train_options() const;
  const StopwordList& stopwords() const;
};

std::vector<Document> load_corpus(const std::string& path,
                                  const RunConfig& config);

// Corpus preparation: validate, filter by reference length and EDU count,
// write normalized JSON-lines. Returns (kept, dropped).
std::pair<int, int> cmd_prep(const std::string& corpus_path,
                             const std::string& out_path,
                             const RunConfig& config);

void cmd_export_dot(const std::vector<Document>& docs, const RunConfig& config,
                    const std::string& out_dir);

void cmd_train(const std::vector<Document>& docs, const RunConfig& config,
               const std::string& model_path, const std::string& log_path);

struct SummaryFile {
  std::string kind;  // system | oracle | baseline-*
  RunConfig config;
  std::vector<SummaryRecord> records;
};

int budget_for(const Document& doc, const RunConfig& config);

std::vector<SummaryRecord> summarize_documents(
    const std::vector<Document>& docs, const Model& model,
    const RunConfig& config);

void cmd_summarize(const std::vector<Document>& docs, const Model& model,
                   const RunConfig& config, const std::string& out_path);

void cmd_oracle(const std::vector<Document>& docs, const RunConfig& config,
                const std::string& out_path,
                const std::string& positions_path);

void cmd_baseline(const std::vector<Document>& docs, const std::string& kind,
                  const RunConfig& config, const std::string& out_path);

// Reads a summaries file produced by any of the commands above.
SummaryFile read_summaries(const std::string& path, const RunConfig& config);

EvalReport cmd_evaluate(const std::vector<Document>& docs,
                        const std::string& summaries_path,
                        const RunConfig& config,
                        const std::string& report_json_path,
                        const std::string& report_table_path);

void cmd_export_ilp(const std::vector<Document>& docs, const Model* model,
                    const RunConfig& config, const std::string& out_dir);

void cmd_export_rouge(const std::vector<Document>& docs,
                      const std::string& summaries_path,
                      const RunConfig& config, const std::string& out_dir);

}  // namespace csumm

#endif  // CSUMM_PIPELINE_HPP_
