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

#ifndef CSUMM_COMPRESS_HPP_
#define CSUMM_COMPRESS_HPP_

#include <string>
#include <utility>
#include <vector>

#include "csumm/corpus.hpp"

namespace csumm {

enum class UnitKind { kEdu, kEduRemainder, kSyntacticDeletion };

// A contiguous sub-sentential token span: the atom of extraction. Units of a
// sentence are non-overlapping and jointly cover the sentence.
struct TextualUnit {
  int id = 0;
  int sentence = 0;
  int begin = 0;
  int end = 0;
  UnitKind kind = UnitKind::kEdu;

  int word_count() const { return end - begin; }
  bool operator==(const TextualUnit&) const = default;
};

// Directed grammaticality dependencies over unit ids: (a, b) means "a may be
// included only if b is". Mutual pairs encode Same-Unit coupling and the
// outer fragments of an augmented EDU.
struct RequirementGraph {
  std::vector<std::pair<int, int>> requires_arcs;  // sorted, deduplicated

  void add(int from, int to);
  void finalize();  // sort + dedupe
  bool closed(const std::vector<bool>& selected) const;
  bool operator==(const RequirementGraph&) const = default;
};

enum class CompressionPattern { kCoordinationSecondConjunct, kPpModifierOfNp };

// A deletable token span licensed by one of the two syntactic patterns.
struct SyntacticCompression {
  int sentence = 0;
  int begin = 0;
  int end = 0;
  CompressionPattern pattern = CompressionPattern::kPpModifierOfNp;

  bool operator==(const SyntacticCompression&) const = default;
};

enum class UnitMode { kSentence, kEdu, kFull };

struct UnitDerivation {
  std::vector<TextualUnit> units;  // ordered by (sentence, begin); id == index
  RequirementGraph graph;
};

// One unit per EDU plus the dependency arcs: child requires head for every
// non-ROOT dependency, mutual arcs between Same-Unit partners. Unit ids are
// sentence-local here (0-based in span order). Throws ValidationError when
// the head arcs contain a cycle not sanctioned as a mutual pair.
UnitDerivation derive_rst_units(const Sentence& sentence);

// The two deletion patterns over the constituency parse: (1) conjunction +
// non-first conjunct inside a coordinated NP, (2) a PP modifier following
// the head NP inside an NP. Sorted by (begin, end), deduplicated.
std::vector<SyntacticCompression> find_syntactic_compressions(
    const Sentence& sentence);

// Grafts syntactic deletions into the EDU-level structure. Each kept
// compression splits its host fragment (i,j) around (k,l) into up to three
// parts: the outer two require each other, the deletable middle requires the
// left outer, and all of the host's previous arcs re-attach to the left
// outer (or to the surviving fragment when a side is empty). Compressions
// crossing EDU boundaries and non-maximal (nested) ones are discarded;
// remaining overlaps resolve left-to-right keeping the earlier span.
UnitDerivation augment(const UnitDerivation& rst,
                       const std::vector<SyntacticCompression>& compressions);

// Document-level derivation: kSentence yields whole-sentence units with no
// arcs, kEdu concatenates per-sentence RST units, kFull adds syntactic
// augmentation. Ids are document-global, ordered by (sentence, span begin).
UnitDerivation build_textual_units(const Document& doc, UnitMode mode);

// Locates the unit containing token (sentence, token); -1 if none.
int unit_containing(const std::vector<TextualUnit>& units, int sentence,
                    int token);

std::string to_dot(const Document& doc, const UnitDerivation& derivation);

}  // namespace csumm

#endif  // CSUMM_COMPRESS_HPP_
