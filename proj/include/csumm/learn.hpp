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

#ifndef CSUMM_LEARN_HPP_
#define CSUMM_LEARN_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "csumm/anaphora.hpp"
#include "csumm/compress.hpp"
#include "csumm/corpus.hpp"
#include "csumm/eval.hpp"
#include "csumm/features.hpp"
#include "csumm/ilp.hpp"

namespace csumm {

struct VersionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TrainOptions {
  UnitMode mode = UnitMode::kFull;
  bool anaphora = true;
  double alpha = 0.8;
  double beta = 0.6;
  double step_size = 0.1;   // eta
  double l1_strength = 1e-8;  // lambda
  int epochs = 10;
  uint64_t seed = 1;
  FeatureGroups groups;
};

// Everything decoding needs for one document: derived structure, features,
// reference statistics, the unigram coverage map, and the word budget.
struct PreparedDocument {
  const Document* doc = nullptr;
  UnitDerivation derivation;
  std::vector<ReplacementCandidate> candidates;
  std::vector<AntecedentConstraint> constraints;
  std::vector<FeatureVector> unit_features;
  std::vector<FeatureVector> repl_features;
  NgramStats ref_unigrams;
  NgramCoverage coverage;
  int budget = 0;
};

struct TrainExample {
  PreparedDocument prep;
  Solution oracle;
  double oracle_rouge = 0.0;  // type-presence ROUGE-1 of the oracle
};

struct Model {
  int format_version = 1;
  Vocabulary vocab;
  std::vector<double> weights;
  std::vector<double> accumulators;
  TrainOptions options;
};

struct SparseGradient {
  std::map<int, double> values;
  bool empty() const { return values.empty(); }
};

struct EpochLog {
  int epoch = 0;
  double mean_hinge = 0.0;
  double seconds = 0.0;
};

struct TrainResult {
  Model model;
  std::vector<EpochLog> epochs;
  int skipped_documents = 0;
};

// Derives units/anaphora structure for a document. When the vocabulary is
// still collecting, feature vectors are left empty and templates are
// interned instead.
PreparedDocument prepare_document(const Document& doc,
                                  const TrainOptions& options,
                                  Vocabulary& vocab);

double presence_rouge(const PreparedDocument& prep, const Solution& solution);

double model_score(const PreparedDocument& prep,
                   const std::vector<double>& weights,
                   const Solution& solution);

// Constraint-respecting summary maximizing type-presence ROUGE-1 against
// the reference: unit and replacement objective coefficients are zero and
// each covered reference unigram type pays count/total.
Solution oracle_decode(const PreparedDocument& prep);

// Most-violated-constraint search: argmax over feasible summaries of
// w.f(x) + loss(x), where loss(x) is the oracle ROUGE-1 minus the
// hypothesis ROUGE-1. Realized by entering the ROUGE term negatively in the
// n-gram objective; the constant oracle term is added back into the
// reported objective.
Solution loss_augmented_decode(const TrainExample& example,
                               const std::vector<double>& weights);

// Plain decode: argmax of w.f(x) with no n-gram term.
Solution decode(const PreparedDocument& prep,
                const std::vector<double>& weights);

struct SubgradientResult {
  SparseGradient gradient;  // f(x_hat) - f(x_oracle); empty when satisfied
  double hinge = 0.0;
};

SubgradientResult subgradient(const TrainExample& example,
                              const std::vector<double>& weights);

// AdaGrad step with per-coordinate l1 truncation, touched coordinates only:
// acc += g^2; raw = w - eta*g/sqrt(acc); w = sign(raw)*max(0,|raw| -
// eta*lambda/sqrt(acc)).
void adagrad_l1_step(Model* model, const SparseGradient& gradient);

TrainResult train(const std::vector<Document>& corpus,
                  const TrainOptions& options);

std::string model_to_json(const Model& model);
Model model_from_json(const std::string& text);  // throws VersionError
void save_model(const Model& model, const std::string& path);
Model load_model(const std::string& path);

}  // namespace csumm

#endif  // CSUMM_LEARN_HPP_
