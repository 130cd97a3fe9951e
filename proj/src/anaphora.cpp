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

#include "csumm/anaphora.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace csumm {

namespace {

bool mention_order_less(const Mention& a, const Mention& b) {
  return std::tie(a.sentence, a.begin, a.end) <
         std::tie(b.sentence, b.begin, b.end);
}

// First non-pronominal mention of the entity in document order, or nullptr.
const Mention* first_text_mention(const Document& doc, int entity) {
  const Mention* best = nullptr;
  for (const Mention& m : doc.coref.mentions) {
    if (m.entity != entity || m.type == MentionType::kPronominal) continue;
    if (best == nullptr || mention_order_less(m, *best)) best = &m;
  }
  return best;
}

std::vector<Token> mention_tokens(const Document& doc, const Mention& m) {
  int begin = m.begin;
  int end = m.end;
  if (m.type == MentionType::kProper && m.ne_span) {
    begin = m.ne_span->first;
    end = m.ne_span->second;
  }
  const Sentence& s = doc.sentences[m.sentence];
  return {s.tokens.begin() + begin, s.tokens.begin() + end};
}

bool is_possessive_clitic(const Token& t) {
  return t.text == "'s" || t.text == "'";
}

int pronoun_ordinal(const Document& doc,
                    const std::vector<TextualUnit>& units, int pronoun_index) {
  const Pronoun& p = doc.coref.pronouns[pronoun_index];
  const int unit = unit_containing(units, p.sentence, p.token);
  int ordinal = 0;
  for (int q = 0; q < pronoun_index; ++q) {
    const Pronoun& other = doc.coref.pronouns[q];
    if (unit_containing(units, other.sentence, other.token) == unit) ++ordinal;
  }
  return ordinal;
}

}  // namespace

std::vector<ReplacementCandidate> select_replacement_candidates(
    const Document& doc, const std::vector<TextualUnit>& units, double alpha) {
  if (!(alpha > 0.5 && alpha <= 1.0)) {
    throw ValidationError("alpha must lie in (0.5, 1]");
  }
  std::vector<ReplacementCandidate> out;
  for (size_t pi = 0; pi < doc.coref.pronouns.size(); ++pi) {
    const Pronoun& p = doc.coref.pronouns[pi];
    const PronounCandidate* top = nullptr;
    for (const PronounCandidate& c : p.candidates) {
      if (top == nullptr || c.posterior > top->posterior) top = &c;
    }
    if (top == nullptr || !(top->posterior > alpha)) continue;

    const Mention* predicted = doc.find_mention(top->mention);
    const Mention* source = first_text_mention(doc, predicted->entity);
    if (source == nullptr) continue;  // antecedent chain is all pronouns

    ReplacementCandidate cand;
    cand.unit = unit_containing(units, p.sentence, p.token);
    if (cand.unit < 0) continue;
    cand.ordinal = pronoun_ordinal(doc, units, static_cast<int>(pi));
    cand.pronoun_index = static_cast<int>(pi);
    cand.sentence = p.sentence;
    cand.token = p.token;
    cand.possessive = p.possessive;
    cand.entity = predicted->entity;
    cand.antecedent_mention = predicted->id;
    cand.source_mention = source->id;
    cand.posterior = top->posterior;
    cand.replacement = mention_tokens(doc, *source);
    // Normalize the possessive clitic: strip any trailing one, then append
    // when the pronoun itself is possessive.
    if (!cand.replacement.empty() &&
        is_possessive_clitic(cand.replacement.back())) {
      cand.replacement.pop_back();
    }
    if (cand.replacement.empty()) continue;
    if (cand.possessive) {
      Token clitic;
      clitic.text = "'s";
      clitic.pos = "POS";
      clitic.is_stopword = true;
      cand.replacement.push_back(clitic);
    }
    cand.delta_words = static_cast<int>(cand.replacement.size()) - 1;

    std::set<int> blockers;
    for (const Mention& m : doc.coref.mentions) {
      if (m.entity != cand.entity || m.type == MentionType::kPronominal) {
        continue;
      }
      if (std::tie(m.sentence, m.begin) >= std::tie(p.sentence, p.token)) {
        continue;  // only mentions before the pronoun block the rewrite
      }
      int u = unit_containing(units, m.sentence, m.begin);
      if (u >= 0 && u <= cand.unit) blockers.insert(u);
    }
    cand.blocker_units.assign(blockers.begin(), blockers.end());
    out.push_back(std::move(cand));
  }
  std::sort(out.begin(), out.end(),
            [](const ReplacementCandidate& a, const ReplacementCandidate& b) {
              return std::tie(a.unit, a.ordinal) < std::tie(b.unit, b.ordinal);
            });
  return out;
}

std::vector<AntecedentConstraint> build_antecedent_constraints(
    const Document& doc, const std::vector<TextualUnit>& units,
    const std::vector<ReplacementCandidate>& candidates, double beta) {
  if (!(beta > 0.0 && beta <= 1.0)) {
    throw ValidationError("beta must lie in (0, 1]");
  }
  std::set<int> replaced;
  for (const ReplacementCandidate& c : candidates) {
    replaced.insert(c.pronoun_index);
  }

  std::vector<AntecedentConstraint> out;
  for (size_t pi = 0; pi < doc.coref.pronouns.size(); ++pi) {
    if (replaced.count(static_cast<int>(pi))) continue;
    const Pronoun& p = doc.coref.pronouns[pi];
    const int pron_unit = unit_containing(units, p.sentence, p.token);
    if (pron_unit < 0) continue;

    AntecedentConstraint c;
    c.pronoun_unit = pron_unit;
    c.pronoun_index = static_cast<int>(pi);
    c.beta = beta;
    std::map<int, double> mass;
    for (const PronounCandidate& pc : p.candidates) {
      const Mention* m = doc.find_mention(pc.mention);
      const int u = unit_containing(units, m->sentence, m->begin);
      if (u < 0) continue;
      if (u == pron_unit) {
        c.in_unit_mass += pc.posterior;
      } else if (u < pron_unit) {
        mass[u] += pc.posterior;
      }
      // Units after the pronoun's cannot license it and are dropped.
    }
    double total = 0.0;
    for (auto [u, m] : mass) {
      c.unit_mass.emplace_back(u, m);
      total += m;
    }
    c.infeasible = total < beta;
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<Token> render_summary_tokens(
    const Document& doc, const std::vector<TextualUnit>& units,
    const std::vector<int>& selected_unit_ids,
    const std::vector<ReplacementCandidate>& applied) {
  std::set<int> selected(selected_unit_ids.begin(), selected_unit_ids.end());
  std::map<std::pair<int, int>, const ReplacementCandidate*> by_position;
  for (const ReplacementCandidate& r : applied) {
    if (!selected.count(r.unit)) {
      throw ValidationError(
          "replacement applied to a unit that is not in the summary (unit " +
          std::to_string(r.unit) + ")");
    }
    by_position[{r.sentence, r.token}] = &r;
  }

  std::vector<int> ordered(selected.begin(), selected.end());
  std::sort(ordered.begin(), ordered.end());

  std::vector<Token> out;
  for (int id : ordered) {
    const TextualUnit& u = units.at(id);
    const Sentence& s = doc.sentences[u.sentence];
    for (int t = u.begin; t < u.end; ++t) {
      auto it = by_position.find({u.sentence, t});
      if (it != by_position.end()) {
        out.insert(out.end(), it->second->replacement.begin(),
                   it->second->replacement.end());
      } else {
        out.push_back(s.tokens[t]);
      }
    }
  }
  return out;
}

}  // namespace csumm
