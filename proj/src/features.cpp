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

#include "csumm/features.hpp"

#include <algorithm>
#include <set>

namespace csumm {

double FeatureVector::dot(const std::vector<double>& weights) const {
  double sum = 0.0;
  for (auto [idx, val] : items) {
    if (idx >= 0 && idx < static_cast<int>(weights.size())) {
      sum += weights[idx] * val;
    }
  }
  return sum;
}

void Vocabulary::count_words(const Document& doc) {
  for (const Sentence& s : doc.sentences) {
    for (const Token& t : s.tokens) {
      word_counts_[lowercased(t.text)] += 1;
    }
  }
}

bool Vocabulary::word_passes_threshold(const std::string& lc) const {
  auto it = word_counts_.find(lc);
  return it != word_counts_.end() && it->second >= kMinWordCount;
}

void Vocabulary::collect(const std::string& feature_template) {
  if (frozen_) return;
  index_.emplace(feature_template, 0);
}

void Vocabulary::freeze() {
  if (frozen_) return;
  templates_.clear();
  templates_.reserve(index_.size());
  for (const auto& [tmpl, _] : index_) templates_.push_back(tmpl);
  std::sort(templates_.begin(), templates_.end());
  index_.clear();
  for (size_t i = 0; i < templates_.size(); ++i) {
    index_[templates_[i]] = static_cast<int>(i);
  }
  frozen_ = true;
}

std::optional<int> Vocabulary::lookup(const std::string& t) const {
  auto it = index_.find(t);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Vocabulary Vocabulary::from_templates(std::vector<std::string> templates) {
  Vocabulary v;
  v.templates_ = std::move(templates);
  for (size_t i = 0; i < v.templates_.size(); ++i) {
    v.index_[v.templates_[i]] = static_cast<int>(i);
  }
  v.frozen_ = true;
  return v;
}

DocumentStats DocumentStats::build(const Document& doc) {
  DocumentStats stats;
  stats.doc = &doc;
  for (const Sentence& s : doc.sentences) {
    for (const Token& t : s.tokens) {
      stats.word_counts[lowercased(t.text)] += 1;
    }
  }
  stats.entities_in_sentence.assign(doc.sentences.size(), 0);
  std::vector<std::set<int>> per_sentence(doc.sentences.size());
  for (const Mention& m : doc.coref.mentions) {
    stats.entity_mentions[m.entity] += 1;
    per_sentence[m.sentence].insert(m.entity);
  }
  for (size_t i = 0; i < per_sentence.size(); ++i) {
    stats.entities_in_sentence[i] = static_cast<int>(per_sentence[i].size());
  }
  return stats;
}

std::string index_bucket(int v) {
  if (v <= 0) return "0";
  if (v == 1) return "1";
  if (v == 2) return "2";
  if (v == 3) return "3";
  if (v <= 5) return "4-5";
  if (v <= 10) return "6-10";
  return "11+";
}

std::string length_bucket(int v) {
  if (v <= 5) return "1-5";
  if (v <= 10) return "6-10";
  if (v <= 20) return "11-20";
  if (v <= 30) return "21-30";
  return "31+";
}

std::string count_bucket(int v) {
  if (v <= 0) return "0";
  if (v == 1) return "1";
  if (v == 2) return "2";
  if (v <= 5) return "3-5";
  if (v <= 10) return "6-10";
  return "11+";
}

void FeatureExtractor::emit(const std::string& feature_template,
                            std::vector<int>* sink) const {
  if (!vocab_.frozen()) {
    vocab_.collect(feature_template);
    return;
  }
  if (auto idx = vocab_.lookup(feature_template)) sink->push_back(*idx);
}

FeatureVector FeatureExtractor::unit_features(const TextualUnit& unit,
                                              const Document& doc,
                                              const DocumentStats& stats) const {
  std::vector<int> indices;
  const Sentence& s = doc.sentences[unit.sentence];
  const std::string sb = index_bucket(unit.sentence);

  if (groups_.lexical) {
    std::set<std::string> words;
    std::set<std::string> tags;
    for (int t = unit.begin; t < unit.end; ++t) {
      const Token& tok = s.tokens[t];
      if (tok.is_stopword) continue;
      const std::string lc = lowercased(tok.text);
      if (vocab_.frozen() || vocab_.word_passes_threshold(lc)) words.insert(lc);
      tags.insert(tok.pos);
    }
    for (const std::string& w : words) {
      emit("U:w=" + w, &indices);
      emit("U:w=" + w + "^sb=" + sb, &indices);
    }
    for (const std::string& t : tags) {
      emit("U:pos=" + t, &indices);
      emit("U:pos=" + t + "^sb=" + sb, &indices);
    }
    auto boundary_word = [&](int idx) -> std::string {
      if (idx < 0) return "<S>";
      if (idx >= static_cast<int>(s.tokens.size())) return "</S>";
      return lowercased(s.tokens[idx].text);
    };
    auto edge = [&](const char* name, int idx) {
      const std::string w = boundary_word(idx);
      if (w != "<S>" && w != "</S>" && !vocab_.frozen() &&
          !vocab_.word_passes_threshold(w)) {
        return;
      }
      emit(std::string("U:") + name + "=" + w, &indices);
      emit(std::string("U:") + name + "=" + w + "^sb=" + sb, &indices);
    };
    edge("first", unit.begin);
    edge("last", unit.end - 1);
    edge("prec", unit.begin - 1);
    edge("foll", unit.end);
  }

  if (groups_.structural) {
    const std::string pos = sb;
    const std::string len = length_bucket(unit.word_count());
    const std::string slen = length_bucket(static_cast<int>(s.tokens.size()));
    const std::string para = index_bucket(s.paragraph);
    const std::string newp = s.starts_paragraph ? "1" : "0";
    const std::vector<std::pair<std::string, std::string>> fields = {
        {"pos", pos}, {"len", len}, {"slen", slen}, {"para", para},
        {"newp", newp}};
    for (size_t i = 0; i < fields.size(); ++i) {
      emit("S:" + fields[i].first + "=" + fields[i].second, &indices);
      for (size_t j = i + 1; j < fields.size(); ++j) {
        emit("S:" + fields[i].first + "=" + fields[i].second + "^" +
                 fields[j].first + "=" + fields[j].second,
             &indices);
      }
    }
  }

  if (groups_.centrality) {
    std::set<std::string> word_count_buckets;
    for (int t = unit.begin; t < unit.end; ++t) {
      const Token& tok = s.tokens[t];
      if (tok.is_stopword) continue;
      auto it = stats.word_counts.find(lowercased(tok.text));
      const int count = it == stats.word_counts.end() ? 0 : it->second;
      word_count_buckets.insert(count_bucket(count));
    }
    for (const std::string& b : word_count_buckets) {
      emit("C:wc=" + b + "^sb=" + sb, &indices);
    }

    std::set<int> unit_entities;
    std::set<std::pair<std::string, std::string>> mention_surface;
    std::unordered_map<int, int> in_unit_per_entity;
    for (const Mention& m : doc.coref.mentions) {
      if (m.sentence != unit.sentence) continue;
      if (m.begin >= unit.begin && m.begin < unit.end) {
        unit_entities.insert(m.entity);
        in_unit_per_entity[m.entity] += 1;
        std::string type = m.type == MentionType::kProper    ? "proper"
                           : m.type == MentionType::kNominal ? "nominal"
                                                             : "pronominal";
        mention_surface.insert({type, length_bucket(m.end - m.begin)});
      }
    }
    for (int entity : unit_entities) {
      auto it = stats.entity_mentions.find(entity);
      const int total = it == stats.entity_mentions.end() ? 0 : it->second;
      const int elsewhere = total - in_unit_per_entity[entity];
      emit("C:ent=" + count_bucket(elsewhere), &indices);
    }
    emit("C:nsent=" + count_bucket(stats.entities_in_sentence[unit.sentence]),
         &indices);
    for (const auto& [type, lenb] : mention_surface) {
      emit("C:mtype=" + type, &indices);
      emit("C:mlen=" + lenb, &indices);
    }
  }

  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  FeatureVector fv;
  fv.items.reserve(indices.size());
  for (int idx : indices) fv.items.emplace_back(idx, 1.0);
  return fv;
}

FeatureVector FeatureExtractor::replacement_features(
    const ReplacementCandidate& cand, const Document& doc) const {
  std::vector<int> indices;
  if (groups_.replacement) {
    const Sentence& s = doc.sentences[cand.sentence];
    emit("R:pron=" + lowercased(s.tokens[cand.token].text), &indices);
    const Mention* source = doc.find_mention(cand.source_mention);
    const std::string type =
        source->type == MentionType::kProper ? "proper" : "nominal";
    emit("R:type=" + type, &indices);
    emit("R:dist=" + index_bucket(std::abs(cand.sentence - source->sentence)),
         &indices);
    emit("R:len=" + length_bucket(static_cast<int>(cand.replacement.size())),
         &indices);
  }
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  FeatureVector fv;
  for (int idx : indices) fv.items.emplace_back(idx, 1.0);
  return fv;
}

}  // namespace csumm
