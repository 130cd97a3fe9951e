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

#include "csumm/learn.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "json.hpp"

namespace csumm {

using nlohmann::json;

namespace {

constexpr double kHingeEps = 1e-12;

std::vector<double> scores_for(const std::vector<FeatureVector>& features,
                               const std::vector<double>& weights) {
  std::vector<double> scores(features.size(), 0.0);
  for (size_t i = 0; i < features.size(); ++i) {
    scores[i] = features[i].dot(weights);
  }
  return scores;
}

IlpModel assemble(const PreparedDocument& prep,
                  const std::vector<double>& unit_scores,
                  const std::vector<double>& repl_scores, double loss_weight) {
  IlpModel model =
      build_model(prep.derivation.units, prep.derivation.graph,
                  prep.candidates, prep.constraints, unit_scores, repl_scores,
                  prep.budget);
  if (loss_weight != 0.0) {
    add_loss_augmentation(&model, prep.ref_unigrams, prep.coverage,
                          loss_weight);
  }
  return model;
}

// Deterministic Fisher-Yates; avoids relying on std::shuffle's
// implementation-defined draw sequence.
void shuffle_indices(std::vector<int>* indices, uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (size_t i = indices->size(); i > 1; --i) {
    const size_t j = rng() % i;
    std::swap((*indices)[i - 1], (*indices)[j]);
  }
}

}  // namespace

PreparedDocument prepare_document(const Document& doc,
                                  const TrainOptions& options,
                                  Vocabulary& vocab) {
  PreparedDocument prep;
  prep.doc = &doc;
  prep.derivation = build_textual_units(doc, options.mode);
  if (options.anaphora) {
    prep.candidates = select_replacement_candidates(
        doc, prep.derivation.units, options.alpha);
    prep.constraints = build_antecedent_constraints(
        doc, prep.derivation.units, prep.candidates, options.beta);
  }
  prep.budget = doc.reference.word_count;
  prep.ref_unigrams = reference_ngram_stats(doc.reference, 1, true);

  // Unigram coverage: a unit covers the types of its own tokens, a
  // replacement the types of its replacement tokens. Pronouns are stopwords,
  // so applying a rewrite never removes a type.
  for (const TextualUnit& u : prep.derivation.units) {
    const Sentence& s = doc.sentences[u.sentence];
    for (int t = u.begin; t < u.end; ++t) {
      if (s.tokens[t].is_stopword) continue;
      const std::string key = lowercased(s.tokens[t].text);
      if (!prep.ref_unigrams.entries.count(key)) continue;
      auto& cover = prep.coverage.covers[key].first;
      if (cover.empty() || cover.back() != u.id) cover.push_back(u.id);
    }
  }
  for (size_t c = 0; c < prep.candidates.size(); ++c) {
    for (const Token& t : prep.candidates[c].replacement) {
      if (t.is_stopword) continue;
      const std::string key = lowercased(t.text);
      if (!prep.ref_unigrams.entries.count(key)) continue;
      auto& cover = prep.coverage.covers[key].second;
      if (cover.empty() || cover.back() != static_cast<int>(c)) {
        cover.push_back(static_cast<int>(c));
      }
    }
  }

  FeatureExtractor extractor(vocab, options.groups);
  DocumentStats stats = DocumentStats::build(doc);
  for (const TextualUnit& u : prep.derivation.units) {
    prep.unit_features.push_back(extractor.unit_features(u, doc, stats));
  }
  for (const ReplacementCandidate& cand : prep.candidates) {
    prep.repl_features.push_back(extractor.replacement_features(cand, doc));
  }
  return prep;
}

double presence_rouge(const PreparedDocument& prep, const Solution& solution) {
  if (prep.ref_unigrams.total == 0) return 0.0;
  double covered = 0.0;
  for (const std::string& key : solution.active_ngrams) {
    auto it = prep.ref_unigrams.entries.find(key);
    if (it != prep.ref_unigrams.entries.end()) covered += it->second;
  }
  return covered / prep.ref_unigrams.total;
}

double model_score(const PreparedDocument& prep,
                   const std::vector<double>& weights,
                   const Solution& solution) {
  double score = 0.0;
  for (int id : solution.unit_ids) {
    score += prep.unit_features.at(id).dot(weights);
  }
  for (int c : solution.replacement_indices) {
    score += prep.repl_features.at(c).dot(weights);
  }
  return score;
}

Solution oracle_decode(const PreparedDocument& prep) {
  const size_t n = prep.derivation.units.size();
  IlpModel model = assemble(prep, std::vector<double>(n, 0.0),
                            std::vector<double>(prep.candidates.size(), 0.0),
                            1.0);
  Solution solution = solve(model);
  return solution;
}

Solution decode(const PreparedDocument& prep,
                const std::vector<double>& weights) {
  IlpModel model = assemble(prep, scores_for(prep.unit_features, weights),
                            scores_for(prep.repl_features, weights), 0.0);
  return solve(model);
}

Solution loss_augmented_decode(const TrainExample& example,
                               const std::vector<double>& weights) {
  const PreparedDocument& prep = example.prep;
  IlpModel model = assemble(prep, scores_for(prep.unit_features, weights),
                            scores_for(prep.repl_features, weights), -1.0);
  Solution solution = solve(model);
  // The solver maximized w.f(x) - rouge(x); report w.f(x) + loss(x).
  solution.objective = model_score(prep, weights, solution) +
                       (example.oracle_rouge - presence_rouge(prep, solution));
  return solution;
}

SubgradientResult subgradient(const TrainExample& example,
                              const std::vector<double>& weights) {
  SubgradientResult result;
  Solution hat = loss_augmented_decode(example, weights);
  const double hat_side = hat.objective;  // w.f(x_hat) + loss(x_hat)
  const double star_score = model_score(example.prep, weights, example.oracle);
  result.hinge = std::max(0.0, hat_side - star_score);
  if (hat_side <= star_score + kHingeEps) return result;

  for (int id : hat.unit_ids) {
    for (auto [idx, val] : example.prep.unit_features.at(id).items) {
      result.gradient.values[idx] += val;
    }
  }
  for (int c : hat.replacement_indices) {
    for (auto [idx, val] : example.prep.repl_features.at(c).items) {
      result.gradient.values[idx] += val;
    }
  }
  for (int id : example.oracle.unit_ids) {
    for (auto [idx, val] : example.prep.unit_features.at(id).items) {
      result.gradient.values[idx] -= val;
    }
  }
  for (int c : example.oracle.replacement_indices) {
    for (auto [idx, val] : example.prep.repl_features.at(c).items) {
      result.gradient.values[idx] -= val;
    }
  }
  std::erase_if(result.gradient.values,
                [](const auto& kv) { return kv.second == 0.0; });
  return result;
}

void adagrad_l1_step(Model* model, const SparseGradient& gradient) {
  const double eta = model->options.step_size;
  const double lambda = model->options.l1_strength;
  for (auto [idx, g] : gradient.values) {
    if (g == 0.0) continue;
    double& acc = model->accumulators.at(idx);
    acc += g * g;
    const double scale = eta / std::sqrt(acc);
    const double raw = model->weights[idx] - scale * g;
    const double shrink = scale * lambda;
    const double mag = std::abs(raw) - shrink;
    model->weights[idx] = mag <= 0.0 ? 0.0 : (raw < 0.0 ? -mag : mag);
  }
}

TrainResult train(const std::vector<Document>& corpus,
                  const TrainOptions& options) {
  if (corpus.empty()) throw ValidationError("training corpus is empty");

  TrainResult result;
  result.model.options = options;
  Vocabulary& vocab = result.model.vocab;

  for (const Document& doc : corpus) vocab.count_words(doc);

  std::vector<const Document*> usable;
  for (const Document& doc : corpus) {
    try {
      prepare_document(doc, options, vocab);  // collect templates
      usable.push_back(&doc);
    } catch (const std::exception& e) {
      std::cerr << "warning: skipping document " << doc.id << ": " << e.what()
                << "\n";
      ++result.skipped_documents;
    }
  }
  if (usable.empty()) {
    throw ValidationError("every training document failed preparation");
  }
  vocab.freeze();

  std::vector<TrainExample> examples;
  examples.reserve(usable.size());
  for (const Document* doc : usable) {
    TrainExample ex;
    ex.prep = prepare_document(*doc, options, vocab);
    ex.oracle = oracle_decode(ex.prep);
    ex.oracle_rouge = presence_rouge(ex.prep, ex.oracle);
    examples.push_back(std::move(ex));
  }

  result.model.weights.assign(vocab.size(), 0.0);
  result.model.accumulators.assign(vocab.size(), 0.0);

  std::vector<int> order(examples.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);

  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    const auto start = std::chrono::steady_clock::now();
    shuffle_indices(&order, options.seed + static_cast<uint64_t>(epoch));
    double hinge_sum = 0.0;
    for (int idx : order) {
      SubgradientResult sg = subgradient(examples[idx], result.model.weights);
      hinge_sum += sg.hinge;
      if (!sg.gradient.empty()) adagrad_l1_step(&result.model, sg.gradient);
    }
    EpochLog log;
    log.epoch = epoch;
    log.mean_hinge = hinge_sum / examples.size();
    log.seconds = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start)
                      .count();
    result.epochs.push_back(log);
  }
  return result;
}

namespace {

const char* mode_name(UnitMode mode) {
  switch (mode) {
    case UnitMode::kSentence: return "sentence";
    case UnitMode::kEdu: return "edu";
    case UnitMode::kFull: return "full";
  }
  return "full";
}

UnitMode mode_from_name(const std::string& name) {
  if (name == "sentence") return UnitMode::kSentence;
  if (name == "edu") return UnitMode::kEdu;
  if (name == "full") return UnitMode::kFull;
  throw ValidationError("unknown unit mode '" + name + "'");
}

}  // namespace

std::string model_to_json(const Model& model) {
  json root;
  root["format_version"] = model.format_version;
  root["options"] = {
      {"mode", mode_name(model.options.mode)},
      {"anaphora", model.options.anaphora},
      {"alpha", model.options.alpha},
      {"beta", model.options.beta},
      {"step_size", model.options.step_size},
      {"l1_strength", model.options.l1_strength},
      {"epochs", model.options.epochs},
      {"seed", model.options.seed},
      {"groups",
       {{"lexical", model.options.groups.lexical},
        {"structural", model.options.groups.structural},
        {"centrality", model.options.groups.centrality},
        {"replacement", model.options.groups.replacement}}},
  };
  root["templates"] = model.vocab.templates();
  json weights = json::array();
  for (size_t i = 0; i < model.weights.size(); ++i) {
    if (model.weights[i] != 0.0) {
      weights.push_back(json::array({i, model.weights[i]}));
    }
  }
  root["weights"] = std::move(weights);
  json accumulators = json::array();
  for (size_t i = 0; i < model.accumulators.size(); ++i) {
    if (model.accumulators[i] != 0.0) {
      accumulators.push_back(json::array({i, model.accumulators[i]}));
    }
  }
  root["accumulators"] = std::move(accumulators);
  return root.dump();
}

Model model_from_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid model JSON: ") + e.what());
  }
  if (!root.contains("format_version") ||
      !root["format_version"].is_number_integer() ||
      root["format_version"].get<int>() != 1) {
    throw VersionError("unsupported model format version");
  }
  Model model;
  const json& opt = root.at("options");
  model.options.mode = mode_from_name(opt.at("mode").get<std::string>());
  model.options.anaphora = opt.at("anaphora").get<bool>();
  model.options.alpha = opt.at("alpha").get<double>();
  model.options.beta = opt.at("beta").get<double>();
  model.options.step_size = opt.at("step_size").get<double>();
  model.options.l1_strength = opt.at("l1_strength").get<double>();
  model.options.epochs = opt.at("epochs").get<int>();
  model.options.seed = opt.at("seed").get<uint64_t>();
  const json& groups = opt.at("groups");
  model.options.groups.lexical = groups.at("lexical").get<bool>();
  model.options.groups.structural = groups.at("structural").get<bool>();
  model.options.groups.centrality = groups.at("centrality").get<bool>();
  model.options.groups.replacement = groups.at("replacement").get<bool>();

  model.vocab = Vocabulary::from_templates(
      root.at("templates").get<std::vector<std::string>>());
  model.weights.assign(model.vocab.size(), 0.0);
  model.accumulators.assign(model.vocab.size(), 0.0);
  for (const json& pair : root.at("weights")) {
    const size_t idx = pair.at(0).get<size_t>();
    if (idx >= model.weights.size()) throw ParseError("weight index out of range");
    model.weights[idx] = pair.at(1).get<double>();
  }
  for (const json& pair : root.at("accumulators")) {
    const size_t idx = pair.at(0).get<size_t>();
    if (idx >= model.accumulators.size()) {
      throw ParseError("accumulator index out of range");
    }
    model.accumulators[idx] = pair.at(1).get<double>();
  }
  return model;
}

void save_model(const Model& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write model file: " + path);
  out << model_to_json(model) << "\n";
}

Model load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read model file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return model_from_json(buffer.str());
}

}  // namespace csumm
