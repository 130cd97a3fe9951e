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

#ifndef CSUMM_CORPUS_HPP_
#define CSUMM_CORPUS_HPP_

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace csumm {

// Raised when input text cannot be parsed at all (malformed JSON, malformed
// bracketed parse). The message names the offending path where known.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when well-formed input violates a documented invariant
// (non-partitioning EDU spans, dangling mention ids, ...).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Token {
  std::string text;
  std::string pos;
  bool is_stopword = false;

  bool operator==(const Token&) const = default;
};

// Constituency tree node. Leaves carry the surface word in `label` and have
// is_word set; internal nodes carry the category label. Spans are half-open
// token index ranges.
struct ParseNode {
  std::string label;
  int begin = 0;
  int end = 0;
  bool is_word = false;
  std::vector<ParseNode> children;

  bool operator==(const ParseNode&) const = default;
};

// One discourse dependency: `edu` depends on `head` (-1 for ROOT) under
// `relation`; `same_unit` names a partner EDU index when the two fragments
// form one syntactic unit, else -1.
struct DiscourseDep {
  int edu = 0;
  int head = -1;
  std::string relation;
  int same_unit = -1;

  bool operator==(const DiscourseDep&) const = default;
};

struct Sentence {
  int index = 0;
  std::vector<Token> tokens;
  std::string parse_text;
  ParseNode parse;
  std::vector<std::pair<int, int>> edus;  // sorted, partition the tokens
  std::vector<DiscourseDep> deps;
  int paragraph = 0;
  bool starts_paragraph = false;

  bool operator==(const Sentence&) const = default;
};

enum class MentionType { kProper, kNominal, kPronominal };

struct Mention {
  int id = 0;
  int sentence = 0;
  int begin = 0;
  int end = 0;
  int entity = 0;
  MentionType type = MentionType::kNominal;
  std::optional<std::pair<int, int>> ne_span;  // named-entity head sub-span

  bool operator==(const Mention&) const = default;
};

struct PronounCandidate {
  int mention = 0;
  double posterior = 0.0;

  bool operator==(const PronounCandidate&) const = default;
};

struct Pronoun {
  int sentence = 0;
  int token = 0;
  bool possessive = false;
  std::vector<PronounCandidate> candidates;

  bool operator==(const Pronoun&) const = default;
};

struct CorefAnnotation {
  std::vector<Mention> mentions;
  std::vector<Pronoun> pronouns;

  bool operator==(const CorefAnnotation&) const = default;
};

// The abstractive target summary. word_count always equals tokens.size();
// it doubles as the decode budget under the reference-length policy.
struct Reference {
  std::vector<Token> tokens;
  int word_count = 0;

  bool operator==(const Reference&) const = default;
};

struct Document {
  std::string id;
  std::vector<Sentence> sentences;
  CorefAnnotation coref;
  Reference reference;

  bool operator==(const Document&) const = default;

  const Mention* find_mention(int mention_id) const;
};

// Fixed stopword inventory: built-in English function words plus a
// punctuation rule; can be replaced wholesale from a file (one word per
// line). Lookup lowercases the token first.
class StopwordList {
 public:
  static const StopwordList& builtin();
  static StopwordList from_file(const std::string& path);

  bool contains(const std::string& token_text) const;
  size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

// Type-level n-gram counts. Keys are lowercased token tuples joined with
// '\x1f'; total is the token-level count (sum of per-type counts).
struct NgramStats {
  int n = 1;
  std::map<std::string, int> entries;
  int total = 0;
};

std::string ngram_key(const std::vector<std::string>& words);
std::string lowercased(const std::string& s);

// Counts n-grams over a token window. With stopword_filter and n == 1,
// stopword types are excluded; higher orders are never filtered here.
NgramStats count_ngrams(const std::vector<Token>& tokens, int n,
                        bool stopword_filter);
NgramStats reference_ngram_stats(const Reference& reference, int n,
                                 bool stopword_filter);

// Parses a bracketed constituency string, mapping leaves to token indices
// 0..token_count-1 in reading order. Throws ParseError on malformed input
// and ValidationError when the leaf count disagrees with token_count.
ParseNode parse_constituency(const std::string& text, int token_count);

// Loads and validates one document from its JSON interchange form.
Document load_document(const std::string& json_text,
                       const StopwordList& stopwords);

// Loads a file holding either a single JSON document, a JSON array of
// documents, or JSON-lines. Order of appearance is preserved.
std::vector<Document> load_corpus_file(const std::string& path,
                                       const StopwordList& stopwords);

std::string serialize_document(const Document& doc);
void write_corpus_file(const std::vector<Document>& docs,
                       const std::string& path);

}  // namespace csumm

#endif  // CSUMM_CORPUS_HPP_
