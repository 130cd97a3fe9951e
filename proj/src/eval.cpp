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

#include "csumm/eval.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include "csumm/ilp.hpp"
#include "csumm/stemmer.hpp"
#include "json.hpp"

namespace csumm {

namespace {

std::vector<std::string> rouge_words(const std::vector<Token>& tokens,
                                     RougeOptions options) {
  std::vector<std::string> words;
  words.reserve(tokens.size());
  for (const Token& t : tokens) {
    if (options.drop_stopwords && t.is_stopword) continue;
    std::string w = lowercased(t.text);
    if (options.stem) w = porter_stem(w);
    words.push_back(std::move(w));
  }
  return words;
}

std::map<std::string, int> ngram_counts(const std::vector<std::string>& words,
                                        int n) {
  std::map<std::string, int> counts;
  for (int i = 0; i + n <= static_cast<int>(words.size()); ++i) {
    counts[ngram_key({words.begin() + i, words.begin() + i + n})] += 1;
  }
  return counts;
}

}  // namespace

double rouge_recall(const std::vector<Token>& summary,
                    const std::vector<Token>& reference, int n,
                    RougeOptions options) {
  if (n < 1 || n > 2) throw ValidationError("rouge order must be 1 or 2");
  const auto ref_counts = ngram_counts(rouge_words(reference, options), n);
  int denom = 0;
  for (const auto& [key, c] : ref_counts) denom += c;
  if (denom == 0) return 0.0;
  const auto sys_counts = ngram_counts(rouge_words(summary, options), n);
  int hits = 0;
  for (const auto& [key, c] : ref_counts) {
    auto it = sys_counts.find(key);
    if (it != sys_counts.end()) hits += std::min(c, it->second);
  }
  return static_cast<double>(hits) / denom;
}

std::vector<Token> baseline_first_k(const Document& doc, int k,
                                    bool sentence_boundary) {
  std::vector<Token> out;
  if (k < 0) throw ValidationError("budget must be >= 0");
  for (const Sentence& s : doc.sentences) {
    if (sentence_boundary) {
      if (static_cast<int>(out.size() + s.tokens.size()) > k) break;
      out.insert(out.end(), s.tokens.begin(), s.tokens.end());
    } else {
      for (const Token& t : s.tokens) {
        if (static_cast<int>(out.size()) >= k) return out;
        out.push_back(t);
      }
    }
  }
  return out;
}

std::vector<Token> baseline_bigram_coverage(const Document& doc, int k) {
  if (k < 0) throw ValidationError("budget must be >= 0");
  UnitDerivation derivation = build_textual_units(doc, UnitMode::kSentence);

  // Document bigram frequencies, counted within sentences.
  NgramStats stats;
  stats.n = 2;
  for (const Sentence& s : doc.sentences) {
    NgramStats local = count_ngrams(s.tokens, 2, false);
    for (const auto& [key, c] : local.entries) stats.entries[key] += c;
    stats.total += local.total;
  }

  NgramCoverage coverage;
  for (const TextualUnit& u : derivation.units) {
    const Sentence& s = doc.sentences[u.sentence];
    NgramStats local = count_ngrams(s.tokens, 2, false);
    for (const auto& [key, c] : local.entries) {
      coverage.covers[key].first.push_back(u.id);
    }
  }

  IlpModel model = build_model(derivation.units, derivation.graph, {}, {},
                               {}, {}, k);
  add_loss_augmentation(&model, stats, coverage, 1.0);
  Solution solution = solve(model);
  return render_summary_tokens(doc, derivation.units, solution.unit_ids, {});
}

PositionHistogram oracle_sentence_positions(const std::vector<Document>& docs) {
  PositionHistogram hist;
  auto bump = [](std::vector<long>* v, int index) {
    if (index >= static_cast<int>(v->size())) v->resize(index + 1, 0);
    (*v)[index] += 1;
  };
  for (const Document& doc : docs) {
    UnitDerivation derivation = build_textual_units(doc, UnitMode::kSentence);
    const int budget = doc.reference.word_count;

    NgramStats stats = reference_ngram_stats(doc.reference, 1, true);
    NgramCoverage coverage;
    for (const TextualUnit& u : derivation.units) {
      const Sentence& s = doc.sentences[u.sentence];
      for (int t = u.begin; t < u.end; ++t) {
        if (s.tokens[t].is_stopword) continue;
        const std::string key = lowercased(s.tokens[t].text);
        if (stats.entries.count(key)) coverage.covers[key].first.push_back(u.id);
      }
    }
    IlpModel model = build_model(derivation.units, derivation.graph, {}, {},
                                 {}, {}, budget);
    add_loss_augmentation(&model, stats, coverage, 1.0);
    Solution solution = solve(model);
    for (int id : solution.unit_ids) {
      bump(&hist.oracle_counts, derivation.units[id].sentence);
    }

    int used = 0;
    for (const Sentence& s : doc.sentences) {
      used += static_cast<int>(s.tokens.size());
      if (used > budget) break;
      bump(&hist.prefix_counts, s.index);
    }
  }
  return hist;
}

int count_orphan_pronouns(const Document& doc,
                          const std::vector<TextualUnit>& units,
                          const std::vector<int>& selected_unit_ids,
                          const std::vector<std::pair<int, int>>& replacements,
                          double beta) {
  std::set<int> selected(selected_unit_ids.begin(), selected_unit_ids.end());
  std::set<std::pair<int, int>> applied(replacements.begin(),
                                        replacements.end());

  // Entities already spelled out by an applied rewrite, keyed for the
  // chain case where a later pronoun leans on an earlier rewritten one.
  std::set<int> rewritten_entities;
  std::vector<ReplacementCandidate> all_candidates =
      select_replacement_candidates(doc, units, 0.5 + 1e-9);
  for (const ReplacementCandidate& c : all_candidates) {
    if (applied.count({c.unit, c.ordinal})) rewritten_entities.insert(c.entity);
  }

  int orphans = 0;
  std::map<int, int> pronoun_seen;  // unit -> pronouns seen so far
  for (const Pronoun& p : doc.coref.pronouns) {
    const int unit = unit_containing(units, p.sentence, p.token);
    if (unit < 0) continue;
    const int ordinal = pronoun_seen[unit]++;
    if (!selected.count(unit)) continue;
    if (applied.count({unit, ordinal})) continue;  // rewritten in place

    const PronounCandidate* top = nullptr;
    double included_mass = 0.0;
    bool mention_included = false;
    for (const PronounCandidate& pc : p.candidates) {
      if (top == nullptr || pc.posterior > top->posterior) top = &pc;
      const Mention* m = doc.find_mention(pc.mention);
      const int mu = unit_containing(units, m->sentence, m->begin);
      if (mu >= 0 && selected.count(mu)) included_mass += pc.posterior;
    }
    if (top != nullptr) {
      const Mention* predicted = doc.find_mention(top->mention);
      for (const Mention& m : doc.coref.mentions) {
        if (m.entity != predicted->entity ||
            m.type == MentionType::kPronominal) {
          continue;
        }
        if (std::tie(m.sentence, m.begin) > std::tie(p.sentence, p.token)) {
          continue;
        }
        const int mu = unit_containing(units, m.sentence, m.begin);
        if (mu >= 0 && selected.count(mu)) {
          mention_included = true;
          break;
        }
      }
      if (rewritten_entities.count(predicted->entity)) mention_included = true;
    }
    if (!mention_included && included_mass < beta) ++orphans;
  }
  return orphans;
}

namespace {

DocumentScore score_one(const Document& doc, const std::vector<Token>& tokens,
                        int budget, RougeOptions rouge) {
  DocumentScore score;
  score.id = doc.id;
  score.rouge1 = rouge_recall(tokens, doc.reference.tokens, 1, rouge);
  score.rouge2 = rouge_recall(tokens, doc.reference.tokens, 2, rouge);
  score.words = static_cast<int>(tokens.size());
  score.budget = budget;
  score.within_budget = score.words <= budget;
  return score;
}

void finish_report(EvalReport* report) {
  double r1 = 0.0;
  double r2 = 0.0;
  for (const DocumentScore& d : report->docs) {
    r1 += d.rouge1;
    r2 += d.rouge2;
    report->orphan_total += d.orphan_pronouns;
    report->all_within_budget = report->all_within_budget && d.within_budget;
  }
  if (!report->docs.empty()) {
    report->macro_rouge1 = r1 / report->docs.size();
    report->macro_rouge2 = r2 / report->docs.size();
  }
}

}  // namespace

EvalReport evaluate(const std::vector<Document>& docs,
                    const std::vector<SummaryRecord>& summaries,
                    const OrphanCheckConfig& check, RougeOptions rouge) {
  if (docs.size() != summaries.size()) {
    throw ValidationError("document and summary counts differ (" +
                          std::to_string(docs.size()) + " vs " +
                          std::to_string(summaries.size()) + ")");
  }
  EvalReport report;
  for (size_t i = 0; i < docs.size(); ++i) {
    const Document& doc = docs[i];
    const SummaryRecord& rec = summaries[i];
    DocumentScore score = score_one(doc, rec.tokens, rec.budget, rouge);
    UnitDerivation derivation = build_textual_units(doc, check.mode);
    score.orphan_pronouns =
        count_orphan_pronouns(doc, derivation.units, rec.unit_ids,
                              rec.replacements, check.beta);
    report.docs.push_back(std::move(score));
  }
  finish_report(&report);
  return report;
}

EvalReport evaluate_token_summaries(
    const std::vector<Document>& docs,
    const std::vector<std::vector<Token>>& summaries,
    const std::vector<int>& budgets, RougeOptions rouge) {
  if (docs.size() != summaries.size() || docs.size() != budgets.size()) {
    throw ValidationError("document and summary counts differ");
  }
  EvalReport report;
  for (size_t i = 0; i < docs.size(); ++i) {
    report.docs.push_back(
        score_one(docs[i], summaries[i], budgets[i], rouge));
  }
  finish_report(&report);
  return report;
}

std::string report_to_json(const EvalReport& report) {
  nlohmann::json root;
  root["format_version"] = 1;
  root["macro"] = {{"rouge1", report.macro_rouge1},
                   {"rouge2", report.macro_rouge2}};
  root["orphan_pronouns"] = report.orphan_total;
  root["all_within_budget"] = report.all_within_budget;
  nlohmann::json docs = nlohmann::json::array();
  for (const DocumentScore& d : report.docs) {
    docs.push_back({{"id", d.id},
                    {"rouge1", d.rouge1},
                    {"rouge2", d.rouge2},
                    {"words", d.words},
                    {"budget", d.budget},
                    {"within_budget", d.within_budget},
                    {"orphan_pronouns", d.orphan_pronouns}});
  }
  root["docs"] = std::move(docs);
  return root.dump(2);
}

std::string report_to_table(const EvalReport& report) {
  std::ostringstream os;
  os << std::left << std::setw(24) << "doc" << std::right << std::setw(8)
     << "R-1" << std::setw(8) << "R-2" << std::setw(7) << "words"
     << std::setw(7) << "k" << std::setw(8) << "orphan" << "\n";
  os << std::string(62, '-') << "\n";
  os << std::fixed << std::setprecision(3);
  for (const DocumentScore& d : report.docs) {
    os << std::left << std::setw(24) << d.id.substr(0, 23) << std::right
       << std::setw(8) << d.rouge1 << std::setw(8) << d.rouge2 << std::setw(7)
       << d.words << std::setw(7) << d.budget << std::setw(8)
       << d.orphan_pronouns << "\n";
  }
  os << std::string(62, '-') << "\n";
  os << std::left << std::setw(24) << "macro" << std::right << std::setw(8)
     << report.macro_rouge1 << std::setw(8) << report.macro_rouge2 << "\n";
  return os.str();
}

}  // namespace csumm
