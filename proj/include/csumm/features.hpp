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

#ifndef CSUMM_FEATURES_HPP_
#define CSUMM_FEATURES_HPP_

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "csumm/anaphora.hpp"
#include "csumm/compress.hpp"
#include "csumm/corpus.hpp"

namespace csumm {

// Sparse indicator vector: unique sorted indices, all values 1.0.
struct FeatureVector {
  std::vector<std::pair<int, double>> items;

  double dot(const std::vector<double>& weights) const;
};

struct FeatureGroups {
  bool lexical = true;
  bool structural = true;
  bool centrality = true;
  bool replacement = true;
};

// Interned feature templates. While collecting, emitted template strings are
// recorded; freeze() assigns indices by sorted template order, after which
// unknown templates are dropped at extraction time. Word-identity templates
// only exist for words seen at least kMinWordCount times in training.
class Vocabulary {
 public:
  static constexpr int kMinWordCount = 5;

  void count_words(const Document& doc);
  bool word_passes_threshold(const std::string& lowercase_word) const;

  void collect(const std::string& feature_template);
  void freeze();
  bool frozen() const { return frozen_; }

  std::optional<int> lookup(const std::string& feature_template) const;
  int size() const { return static_cast<int>(templates_.size()); }
  const std::vector<std::string>& templates() const { return templates_; }

  // Rebuilds a frozen vocabulary from a serialized template list.
  static Vocabulary from_templates(std::vector<std::string> templates);

 private:
  bool frozen_ = false;
  std::vector<std::string> templates_;
  std::unordered_map<std::string, int> index_;
  std::unordered_map<std::string, int> word_counts_;
};

// Per-document tables shared by all unit extractions: document word counts,
// entity mention tallies, and mention placement.
struct DocumentStats {
  const Document* doc = nullptr;
  std::unordered_map<std::string, int> word_counts;
  std::unordered_map<int, int> entity_mentions;        // entity -> mentions
  std::vector<int> entities_in_sentence;               // distinct entities

  static DocumentStats build(const Document& doc);
};

// Bucketing schemes; every integer falls in exactly one bucket.
std::string index_bucket(int v);   // 0,1,2,3,4-5,6-10,11+
std::string length_bucket(int v);  // 1-5,6-10,11-20,21-30,31+
std::string count_bucket(int v);   // 0,1,2,3-5,6-10,11+

class FeatureExtractor {
 public:
  FeatureExtractor(Vocabulary& vocab, FeatureGroups groups)
      : vocab_(vocab), groups_(groups) {}

  // In collect mode (unfrozen vocabulary) templates are interned and no
  // vector is produced; in frozen mode the sparse vector is returned.
  FeatureVector unit_features(const TextualUnit& unit, const Document& doc,
                              const DocumentStats& stats) const;
  FeatureVector replacement_features(const ReplacementCandidate& cand,
                                     const Document& doc) const;

 private:
  void emit(const std::string& feature_template,
            std::vector<int>* sink) const;

  Vocabulary& vocab_;
  FeatureGroups groups_;
};

}  // namespace csumm

#endif  // CSUMM_FEATURES_HPP_
