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

#include "csumm/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace csumm {

using nlohmann::json;

namespace {

const char* const kBuiltinStopwords[] = {
    "a",       "about",   "above",    "across",  "after",    "again",
    "against", "all",     "almost",   "along",   "already",  "also",
    "although", "always", "am",       "among",   "an",       "and",
    "another", "any",     "anyone",   "anything", "are",     "around",
    "as",      "at",      "be",       "because", "been",     "before",
    "being",   "below",   "between",  "both",    "but",      "by",
    "can",     "cannot",  "could",    "did",     "do",       "does",
    "doing",   "down",    "during",   "each",    "either",   "else",
    "ever",    "every",   "few",      "for",     "from",     "further",
    "had",     "has",     "have",     "having",  "he",       "her",
    "here",    "hers",    "herself",  "him",     "himself",  "his",
    "how",     "i",       "if",       "in",      "into",     "is",
    "it",      "its",     "itself",   "just",    "least",    "less",
    "many",    "may",     "me",       "might",   "mine",     "more",
    "most",    "much",    "must",     "my",      "myself",   "neither",
    "never",   "no",      "nor",      "not",     "now",      "of",
    "off",     "on",      "once",     "one",     "only",     "onto",
    "or",      "other",   "our",      "ours",    "ourselves", "out",
    "over",    "own",     "per",      "rather",  "same",     "shall",
    "she",     "should",  "since",    "so",      "some",     "something",
    "still",   "such",    "than",     "that",    "the",      "their",
    "theirs",  "them",    "themselves", "then",  "there",    "these",
    "they",    "this",    "those",    "through", "to",       "too",
    "under",   "until",   "up",       "upon",    "us",       "very",
    "was",     "we",      "were",     "what",    "when",     "where",
    "whether", "which",   "while",    "who",     "whom",     "whose",
    "why",     "will",    "with",     "within",  "without",  "would",
    "yet",     "you",     "your",     "yours",   "yourself", "yourselves",
    "'s",      "'re",     "'ve",      "'ll",     "'d",       "'m",
    "n't",
};

bool all_punct(const std::string& s) {
  if (s.empty()) return false;
  for (unsigned char c : s) {
    if (std::isalnum(c)) return false;
    if (c >= 0x80) return false;  // multibyte text is never punctuation here
  }
  return true;
}

// ---- JSON field access with path-bearing errors ----

const json& require(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ParseError("missing field " + path + "." + key);
  }
  return obj.at(key);
}

int require_int(const json& obj, const char* key, const std::string& path) {
  const json& v = require(obj, key, path);
  if (!v.is_number_integer()) {
    throw ParseError("expected integer at " + path + "." + key);
  }
  return v.get<int>();
}

bool require_bool(const json& obj, const char* key, const std::string& path) {
  const json& v = require(obj, key, path);
  if (!v.is_boolean()) {
    throw ParseError("expected boolean at " + path + "." + key);
  }
  return v.get<bool>();
}

std::string require_string(const json& obj, const char* key,
                           const std::string& path) {
  const json& v = require(obj, key, path);
  if (!v.is_string()) {
    throw ParseError("expected string at " + path + "." + key);
  }
  return v.get<std::string>();
}

std::pair<int, int> read_span(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() ||
      !v[1].is_number_integer()) {
    throw ParseError("expected [begin,end] span at " + path);
  }
  return {v[0].get<int>(), v[1].get<int>()};
}

Token read_token(const json& v, const StopwordList& stopwords,
                 const std::string& path) {
  Token t;
  t.text = require_string(v, "text", path);
  if (t.text.empty()) throw ValidationError("empty token text at " + path);
  t.pos = v.contains("pos") ? require_string(v, "pos", path) : std::string();
  t.is_stopword = stopwords.contains(t.text);
  return t;
}

MentionType mention_type_from(const std::string& s, const std::string& path) {
  if (s == "proper") return MentionType::kProper;
  if (s == "nominal") return MentionType::kNominal;
  if (s == "pronominal") return MentionType::kPronominal;
  throw ParseError("unknown mention type '" + s + "' at " + path);
}

const char* mention_type_name(MentionType t) {
  switch (t) {
    case MentionType::kProper: return "proper";
    case MentionType::kNominal: return "nominal";
    case MentionType::kPronominal: return "pronominal";
  }
  return "nominal";
}

void validate_sentence(Sentence& s, const std::string& path) {
  const int n = static_cast<int>(s.tokens.size());
  if (n == 0) throw ValidationError("sentence has no tokens at " + path);

  std::sort(s.edus.begin(), s.edus.end());
  if (s.edus.empty()) throw ValidationError("sentence has no EDUs at " + path);
  int cursor = 0;
  for (size_t i = 0; i < s.edus.size(); ++i) {
    auto [b, e] = s.edus[i];
    if (b != cursor || e <= b) {
      throw ValidationError("EDUs must partition sentence at " + path +
                            ".edus");
    }
    cursor = e;
  }
  if (cursor != n) {
    throw ValidationError("EDUs must partition sentence at " + path + ".edus");
  }

  const int edu_count = static_cast<int>(s.edus.size());
  for (size_t i = 0; i < s.deps.size(); ++i) {
    const DiscourseDep& d = s.deps[i];
    const std::string dpath =
        path + ".discourse_deps[" + std::to_string(i) + "]";
    if (d.edu < 0 || d.edu >= edu_count) {
      throw ValidationError("dep edu index out of range at " + dpath);
    }
    if (d.head < -1 || d.head >= edu_count || d.head == d.edu) {
      throw ValidationError("dep head index out of range at " + dpath);
    }
    if (d.same_unit < -1 || d.same_unit >= edu_count ||
        d.same_unit == d.edu) {
      throw ValidationError("dep same_unit index out of range at " + dpath);
    }
  }

  s.parse = parse_constituency(s.parse_text, n);
}

json token_to_json(const Token& t) {
  return json{{"text", t.text}, {"pos", t.pos}};
}

}  // namespace

const Mention* Document::find_mention(int mention_id) const {
  for (const Mention& m : coref.mentions) {
    if (m.id == mention_id) return &m;
  }
  return nullptr;
}

const StopwordList& StopwordList::builtin() {
  static const StopwordList* instance = [] {
    auto* list = new StopwordList();
    for (const char* w : kBuiltinStopwords) list->words_.insert(w);
    return list;
  }();
  return *instance;
}

StopwordList StopwordList::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open stopword file: " + path);
  StopwordList list;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
      line.pop_back();
    }
    if (!line.empty()) list.words_.insert(lowercased(line));
  }
  return list;
}

bool StopwordList::contains(const std::string& token_text) const {
  if (all_punct(token_text)) return true;
  return words_.count(lowercased(token_text)) > 0;
}

std::string lowercased(const std::string& s) {
  std::string out = s;
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

std::string ngram_key(const std::vector<std::string>& words) {
  std::string key;
  for (size_t i = 0; i < words.size(); ++i) {
    if (i) key.push_back('\x1f');
    key += words[i];
  }
  return key;
}

NgramStats count_ngrams(const std::vector<Token>& tokens, int n,
                        bool stopword_filter) {
  if (n < 1) throw ValidationError("ngram order must be >= 1");
  NgramStats stats;
  stats.n = n;
  const int count = static_cast<int>(tokens.size());
  for (int i = 0; i + n <= count; ++i) {
    bool filtered = false;
    std::vector<std::string> words;
    words.reserve(n);
    for (int j = i; j < i + n; ++j) {
      if (stopword_filter && n == 1 && tokens[j].is_stopword) {
        filtered = true;
        break;
      }
      words.push_back(lowercased(tokens[j].text));
    }
    if (filtered) continue;
    stats.entries[ngram_key(words)] += 1;
    stats.total += 1;
  }
  return stats;
}

NgramStats reference_ngram_stats(const Reference& reference, int n,
                                 bool stopword_filter) {
  return count_ngrams(reference.tokens, n, stopword_filter);
}

// ---- bracketed constituency parsing ----

namespace {

struct TreeReader {
  const std::string& text;
  size_t pos = 0;
  int next_leaf = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
  }

  std::string read_atom() {
    size_t start = pos;
    while (pos < text.size() && text[pos] != '(' && text[pos] != ')' &&
           !std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
    return text.substr(start, pos - start);
  }

  ParseNode read_node() {
    skip_ws();
    if (pos >= text.size() || text[pos] != '(') {
      throw ParseError("expected '(' in parse at offset " +
                       std::to_string(pos));
    }
    ++pos;
    skip_ws();
    ParseNode node;
    if (pos < text.size() && text[pos] != '(' && text[pos] != ')') {
      node.label = read_atom();
    }
    skip_ws();
    while (pos < text.size() && text[pos] != ')') {
      if (text[pos] == '(') {
        node.children.push_back(read_node());
      } else {
        ParseNode leaf;
        leaf.label = read_atom();
        leaf.is_word = true;
        leaf.begin = next_leaf;
        leaf.end = ++next_leaf;
        node.children.push_back(std::move(leaf));
      }
      skip_ws();
    }
    if (pos >= text.size()) throw ParseError("unbalanced parse string");
    ++pos;  // consume ')'
    if (node.children.empty()) {
      // "(word)" style leaf; treat the atom as the word itself.
      if (node.label.empty()) throw ParseError("empty parse node");
      node.is_word = true;
      node.begin = next_leaf;
      node.end = ++next_leaf;
    } else {
      node.begin = node.children.front().begin;
      node.end = node.children.back().end;
    }
    return node;
  }
};

}  // namespace

ParseNode parse_constituency(const std::string& text, int token_count) {
  TreeReader reader{text};
  ParseNode root = reader.read_node();
  reader.skip_ws();
  if (reader.pos != text.size()) {
    throw ParseError("trailing characters after parse tree");
  }
  // Unwrap a bare "( (S ...) )" shell.
  while (root.label.empty() && root.children.size() == 1 && !root.is_word) {
    ParseNode inner = std::move(root.children.front());
    root = std::move(inner);
  }
  if (reader.next_leaf != token_count) {
    throw ValidationError("parse leaf count " +
                          std::to_string(reader.next_leaf) +
                          " does not match token count " +
                          std::to_string(token_count));
  }
  return root;
}

// ---- document load / serialize ----

namespace {

Document document_from_json(const json& root, const StopwordList& stopwords) {
  Document doc;
  doc.id = require_string(root, "id", "$");

  const json& sentences = require(root, "sentences", "$");
  if (!sentences.is_array() || sentences.empty()) {
    throw ParseError("expected non-empty array at $.sentences");
  }
  for (size_t si = 0; si < sentences.size(); ++si) {
    const std::string spath = "$.sentences[" + std::to_string(si) + "]";
    const json& sj = sentences[si];
    Sentence s;
    s.index = static_cast<int>(si);
    const json& toks = require(sj, "tokens", spath);
    if (!toks.is_array()) throw ParseError("expected array at " + spath + ".tokens");
    for (size_t ti = 0; ti < toks.size(); ++ti) {
      s.tokens.push_back(read_token(
          toks[ti], stopwords, spath + ".tokens[" + std::to_string(ti) + "]"));
    }
    s.parse_text = require_string(sj, "parse", spath);
    const json& edus = require(sj, "edus", spath);
    if (!edus.is_array()) throw ParseError("expected array at " + spath + ".edus");
    for (size_t ei = 0; ei < edus.size(); ++ei) {
      s.edus.push_back(
          read_span(edus[ei], spath + ".edus[" + std::to_string(ei) + "]"));
    }
    if (sj.contains("discourse_deps")) {
      const json& deps = sj.at("discourse_deps");
      if (!deps.is_array()) {
        throw ParseError("expected array at " + spath + ".discourse_deps");
      }
      for (size_t di = 0; di < deps.size(); ++di) {
        const std::string dpath =
            spath + ".discourse_deps[" + std::to_string(di) + "]";
        const json& dj = deps[di];
        DiscourseDep d;
        d.edu = require_int(dj, "edu", dpath);
        d.head = require_int(dj, "head", dpath);
        d.relation = require_string(dj, "relation", dpath);
        if (dj.contains("same_unit") && !dj.at("same_unit").is_null()) {
          d.same_unit = require_int(dj, "same_unit", dpath);
        }
        s.deps.push_back(std::move(d));
      }
    }
    s.paragraph = require_int(sj, "paragraph", spath);
    s.starts_paragraph = require_bool(sj, "starts_paragraph", spath);
    validate_sentence(s, spath);
    doc.sentences.push_back(std::move(s));
  }

  if (root.contains("coref")) {
    const json& cj = root.at("coref");
    if (cj.contains("mentions")) {
      const json& ms = cj.at("mentions");
      for (size_t mi = 0; mi < ms.size(); ++mi) {
        const std::string mpath = "$.coref.mentions[" + std::to_string(mi) + "]";
        const json& mj = ms[mi];
        Mention m;
        m.id = require_int(mj, "id", mpath);
        m.sentence = require_int(mj, "sentence", mpath);
        auto [b, e] = read_span(require(mj, "span", mpath), mpath + ".span");
        m.begin = b;
        m.end = e;
        m.entity = require_int(mj, "entity", mpath);
        m.type = mention_type_from(require_string(mj, "type", mpath), mpath);
        if (mj.contains("ne_span") && !mj.at("ne_span").is_null()) {
          m.ne_span = read_span(mj.at("ne_span"), mpath + ".ne_span");
        }
        if (m.sentence < 0 ||
            m.sentence >= static_cast<int>(doc.sentences.size())) {
          throw ValidationError("mention sentence out of range at " + mpath);
        }
        const int slen =
            static_cast<int>(doc.sentences[m.sentence].tokens.size());
        if (m.begin < 0 || m.end > slen || m.begin >= m.end) {
          throw ValidationError("mention span out of range at " + mpath);
        }
        if (m.ne_span) {
          if (m.ne_span->first < m.begin || m.ne_span->second > m.end ||
              m.ne_span->first >= m.ne_span->second) {
            throw ValidationError("ne_span outside mention span at " + mpath);
          }
        }
        doc.coref.mentions.push_back(std::move(m));
      }
    }
    {
      std::unordered_set<int> seen;
      for (const Mention& m : doc.coref.mentions) {
        if (!seen.insert(m.id).second) {
          throw ValidationError("duplicate mention id " + std::to_string(m.id));
        }
      }
    }
    if (cj.contains("pronouns")) {
      const json& ps = cj.at("pronouns");
      for (size_t pi = 0; pi < ps.size(); ++pi) {
        const std::string ppath = "$.coref.pronouns[" + std::to_string(pi) + "]";
        const json& pj = ps[pi];
        Pronoun p;
        p.sentence = require_int(pj, "sentence", ppath);
        p.token = require_int(pj, "token", ppath);
        p.possessive = require_bool(pj, "possessive", ppath);
        if (pj.contains("candidates")) {
          double mass = 0.0;
          for (size_t ci = 0; ci < pj.at("candidates").size(); ++ci) {
            const std::string cpath =
                ppath + ".candidates[" + std::to_string(ci) + "]";
            const json& cc = pj.at("candidates")[ci];
            PronounCandidate cand;
            cand.mention = require_int(cc, "mention", cpath);
            const json& post = require(cc, "posterior", cpath);
            if (!post.is_number()) {
              throw ParseError("expected number at " + cpath + ".posterior");
            }
            cand.posterior = post.get<double>();
            if (cand.posterior < 0.0 || cand.posterior > 1.0) {
              throw ValidationError("posterior outside [0,1] at " + cpath);
            }
            if (doc.find_mention(cand.mention) == nullptr) {
              throw ValidationError("unresolved antecedent mention id " +
                                    std::to_string(cand.mention) + " at " +
                                    cpath);
            }
            mass += cand.posterior;
            p.candidates.push_back(cand);
          }
          if (mass > 1.0 + 1e-6) {
            throw ValidationError("candidate posteriors sum to " +
                                  std::to_string(mass) + " > 1 at " + ppath);
          }
        }
        if (p.sentence < 0 ||
            p.sentence >= static_cast<int>(doc.sentences.size())) {
          throw ValidationError("pronoun sentence out of range at " + ppath);
        }
        const int slen =
            static_cast<int>(doc.sentences[p.sentence].tokens.size());
        if (p.token < 0 || p.token >= slen) {
          throw ValidationError("pronoun token out of range at " + ppath);
        }
        doc.coref.pronouns.push_back(std::move(p));
      }
      std::sort(doc.coref.pronouns.begin(), doc.coref.pronouns.end(),
                [](const Pronoun& a, const Pronoun& b) {
                  return std::tie(a.sentence, a.token) <
                         std::tie(b.sentence, b.token);
                });
    }
  }

  const json& ref = require(root, "reference", "$");
  const json& rtoks = require(ref, "tokens", "$.reference");
  for (size_t ti = 0; ti < rtoks.size(); ++ti) {
    doc.reference.tokens.push_back(
        read_token(rtoks[ti], stopwords,
                   "$.reference.tokens[" + std::to_string(ti) + "]"));
  }
  doc.reference.word_count = static_cast<int>(doc.reference.tokens.size());
  return doc;
}

}  // namespace

Document load_document(const std::string& json_text,
                       const StopwordList& stopwords) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return document_from_json(root, stopwords);
}

std::vector<Document> load_corpus_file(const std::string& path,
                                       const StopwordList& stopwords) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open corpus file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  std::vector<Document> docs;
  size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return docs;

  if (text[first] == '[') {
    json root;
    try {
      root = json::parse(text);
    } catch (const json::exception& e) {
      throw ParseError(path + ": invalid JSON: " + e.what());
    }
    for (const json& dj : root) docs.push_back(document_from_json(dj, stopwords));
    return docs;
  }

  // Try the whole file as one object; fall back to JSON-lines.
  try {
    json root = json::parse(text);
    docs.push_back(document_from_json(root, stopwords));
    return docs;
  } catch (const json::exception&) {
    // fall through
  }

  std::istringstream lines(text);
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      docs.push_back(load_document(line, stopwords));
    } catch (const ParseError& e) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return docs;
}

std::string serialize_document(const Document& doc) {
  json root;
  root["id"] = doc.id;
  json sentences = json::array();
  for (const Sentence& s : doc.sentences) {
    json sj;
    json toks = json::array();
    for (const Token& t : s.tokens) toks.push_back(token_to_json(t));
    sj["tokens"] = std::move(toks);
    sj["parse"] = s.parse_text;
    json edus = json::array();
    for (auto [b, e] : s.edus) edus.push_back(json::array({b, e}));
    sj["edus"] = std::move(edus);
    json deps = json::array();
    for (const DiscourseDep& d : s.deps) {
      deps.push_back(json{{"edu", d.edu},
                          {"head", d.head},
                          {"relation", d.relation},
                          {"same_unit", d.same_unit}});
    }
    sj["discourse_deps"] = std::move(deps);
    sj["paragraph"] = s.paragraph;
    sj["starts_paragraph"] = s.starts_paragraph;
    sentences.push_back(std::move(sj));
  }
  root["sentences"] = std::move(sentences);

  json mentions = json::array();
  for (const Mention& m : doc.coref.mentions) {
    json mj{{"id", m.id},
            {"sentence", m.sentence},
            {"span", json::array({m.begin, m.end})},
            {"entity", m.entity},
            {"type", mention_type_name(m.type)}};
    if (m.ne_span) {
      mj["ne_span"] = json::array({m.ne_span->first, m.ne_span->second});
    } else {
      mj["ne_span"] = nullptr;
    }
    mentions.push_back(std::move(mj));
  }
  json pronouns = json::array();
  for (const Pronoun& p : doc.coref.pronouns) {
    json cands = json::array();
    for (const PronounCandidate& c : p.candidates) {
      cands.push_back(json{{"mention", c.mention}, {"posterior", c.posterior}});
    }
    pronouns.push_back(json{{"sentence", p.sentence},
                            {"token", p.token},
                            {"possessive", p.possessive},
                            {"candidates", std::move(cands)}});
  }
  root["coref"] = json{{"mentions", std::move(mentions)},
                       {"pronouns", std::move(pronouns)}};

  json rtoks = json::array();
  for (const Token& t : doc.reference.tokens) rtoks.push_back(token_to_json(t));
  root["reference"] = json{{"tokens", std::move(rtoks)}};
  return root.dump();
}

void write_corpus_file(const std::vector<Document>& docs,
                       const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write corpus file: " + path);
  for (const Document& doc : docs) out << serialize_document(doc) << "\n";
}

}  // namespace csumm
