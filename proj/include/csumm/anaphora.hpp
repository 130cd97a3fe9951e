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

#ifndef CSUMM_ANAPHORA_HPP_
#define CSUMM_ANAPHORA_HPP_

#include <string>
#include <vector>

#include "csumm/compress.hpp"
#include "csumm/corpus.hpp"

namespace csumm {

// A confident pronoun rewrite: replace the pronoun token with the first
// non-pronominal mention of its predicted entity. Identified by
// (unit, ordinal) where ordinal counts pronouns within the unit.
struct ReplacementCandidate {
  int unit = 0;
  int ordinal = 0;
  int pronoun_index = 0;      // index into Document.coref.pronouns
  int sentence = 0;
  int token = 0;              // pronoun token position
  bool possessive = false;
  int entity = 0;
  int antecedent_mention = 0;  // predicted (max-posterior) mention id
  int source_mention = 0;      // mention the replacement text comes from
  double posterior = 0.0;
  std::vector<Token> replacement;  // non-empty
  int delta_words = 0;             // replacement length - 1, never negative
  std::vector<int> blocker_units;  // earlier units with a non-pronominal
                                   // mention of the entity (may include the
                                   // pronoun's own unit)
};

// For a pronoun below the replacement threshold: included antecedent-bearing
// units strictly before the pronoun's unit must carry posterior mass >= beta
// whenever the pronoun's unit is included. in_unit_mass records candidate
// mass located in the pronoun's own unit; when it already reaches beta the
// pronoun needs no constraint at all.
struct AntecedentConstraint {
  int pronoun_unit = 0;
  int pronoun_index = 0;
  std::vector<std::pair<int, double>> unit_mass;  // (unit id, mass), unit < pronoun_unit
  double beta = 0.0;
  double in_unit_mass = 0.0;
  bool infeasible = false;  // listed mass < beta
};

// One candidate per pronoun whose top antecedent posterior exceeds alpha and
// whose entity has a non-pronominal mention to copy text from. Candidates
// are ordered by (unit, ordinal).
std::vector<ReplacementCandidate> select_replacement_candidates(
    const Document& doc, const std::vector<TextualUnit>& units, double alpha);

// One constraint per pronoun that produced no replacement candidate, so the
// two lists partition the document's pronouns.
std::vector<AntecedentConstraint> build_antecedent_constraints(
    const Document& doc, const std::vector<TextualUnit>& units,
    const std::vector<ReplacementCandidate>& candidates, double beta);

// Concatenates the tokens of the selected units in document order, applying
// the given replacements. Throws ValidationError if a replacement's unit is
// not selected. The result length equals sum(word_count) + sum(delta_words).
std::vector<Token> render_summary_tokens(
    const Document& doc, const std::vector<TextualUnit>& units,
    const std::vector<int>& selected_unit_ids,
    const std::vector<ReplacementCandidate>& applied);

}  // namespace csumm

#endif  // CSUMM_ANAPHORA_HPP_
