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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "csumm/compress.hpp"
#include "fixtures.hpp"

using namespace csumm;

namespace {

// Test-side oracle: all unit subsets closed under the requirement arcs,
// found by filtering the powerset.
std::set<std::set<int>> closed_subsets(int n, const RequirementGraph& graph) {
  std::set<std::set<int>> out;
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<bool> selected(n, false);
    for (int i = 0; i < n; ++i) selected[i] = (mask >> i) & 1u;
    if (!graph.closed(selected)) continue;
    std::set<int> subset;
    for (int i = 0; i < n; ++i) {
      if (selected[i]) subset.insert(i);
    }
    out.insert(subset);
  }
  return out;
}

Sentence chain_sentence() {
  // Three EDUs where each depends on the previous one.
  const std::string json =
      std::string("{\"id\":\"chain\",\"sentences\":[{\"tokens\":") +
      fixtures::tokens_json("a/NN b/NN c/NN") +
      ",\"parse\":\"(S (NN a) (NN b) (NN c))\",\"edus\":[[0,1],[1,2],[2,3]]," +
      "\"discourse_deps\":[{\"edu\":0,\"head\":-1,\"relation\":\"root\","
      "\"same_unit\":-1},{\"edu\":1,\"head\":0,\"relation\":\"elab\","
      "\"same_unit\":-1},{\"edu\":2,\"head\":1,\"relation\":\"elab\","
      "\"same_unit\":-1}],\"paragraph\":0,\"starts_paragraph\":true}]," +
      "\"reference\":{\"tokens\":" + fixtures::tokens_json("a/NN") + "}}";
  return load_document(json, StopwordList::builtin()).sentences[0];
}

}  // namespace

TEST_CASE("rst units mirror the discourse dependencies") {
  Document doc = fixtures::claims_document();
  UnitDerivation d = derive_rst_units(doc.sentences[0]);
  REQUIRE(d.units.size() == 3);
  CHECK(d.units[0].begin == 0);
  CHECK(d.units[0].end == 8);
  CHECK(d.units[1].begin == 8);
  CHECK(d.units[2].begin == 16);
  // Elaboration unit requires its head; the split unit pair is mutual.
  std::vector<std::pair<int, int>> expected = {{0, 2}, {1, 0}, {2, 0}};
  CHECK(d.graph.requires_arcs == expected);
}

TEST_CASE("single-EDU sentence has one unit and no arcs") {
  Document doc = load_document(fixtures::minimal_document_json(),
                               StopwordList::builtin());
  UnitDerivation d = derive_rst_units(doc.sentences[0]);
  CHECK(d.units.size() == 1);
  CHECK(d.graph.requires_arcs.empty());
}

TEST_CASE("chain dependencies admit exactly the prefixes") {
  UnitDerivation d = derive_rst_units(chain_sentence());
  REQUIRE(d.units.size() == 3);
  std::set<std::set<int>> expected = {{}, {0}, {0, 1}, {0, 1, 2}};
  CHECK(closed_subsets(3, d.graph) == expected);
}

TEST_CASE("dependency cycles are rejected") {
  Sentence s = chain_sentence();
  s.deps[0].head = 2;  // 0 -> 2 closes the 2 -> 1 -> 0 chain into a cycle
  s.deps[0].same_unit = -1;
  CHECK_THROWS_AS(derive_rst_units(s), ValidationError);
}

TEST_CASE("same-unit pairs are not reported as cycles") {
  Document doc = fixtures::claims_document();
  CHECK_NOTHROW(derive_rst_units(doc.sentences[0]));
}

TEST_CASE("syntactic compressions find coordination and pp spans") {
  Document doc = fixtures::claims_document();
  std::vector<SyntacticCompression> found =
      find_syntactic_compressions(doc.sentences[0]);
  REQUIRE(found.size() == 2);
  CHECK(found[0].begin == 5);  // "with Aetna"
  CHECK(found[0].end == 7);
  CHECK(found[0].pattern == CompressionPattern::kPpModifierOfNp);
  CHECK(found[1].begin == 14);  // "and waste"
  CHECK(found[1].end == 16);
  CHECK(found[1].pattern == CompressionPattern::kCoordinationSecondConjunct);
}

TEST_CASE("sentences without the patterns yield no compressions") {
  Document doc = load_document(fixtures::minimal_document_json(),
                               StopwordList::builtin());
  CHECK(find_syntactic_compressions(doc.sentences[0]).empty());
}

TEST_CASE("interior deletion splits a unit into three mutually tied parts") {
  // One EDU covering "is a claims adjuster with Aetna ." with the PP
  // deletable: outer fragments require each other, the middle requires the
  // left outer.
  const std::string json =
      std::string("{\"id\":\"pp\",\"sentences\":[{\"tokens\":") +
      fixtures::tokens_json(
          "is/VBZ a/DT claims/NNS adjuster/NN with/IN Aetna/NNP ./.") +
      ",\"parse\":\"(S (VP (VBZ is) (NP (NP (DT a) (NNS claims) (NN "
      "adjuster)) (PP (IN with) (NNP Aetna)))) (. .))\"," +
      "\"edus\":[[0,7]],\"discourse_deps\":[{\"edu\":0,\"head\":-1,"
      "\"relation\":\"root\",\"same_unit\":-1}],\"paragraph\":0,"
      "\"starts_paragraph\":true}],\"reference\":{\"tokens\":" +
      fixtures::tokens_json("adjuster/NN") + "}}";
  Document doc = load_document(json, StopwordList::builtin());
  UnitDerivation rst = derive_rst_units(doc.sentences[0]);
  UnitDerivation full =
      augment(rst, find_syntactic_compressions(doc.sentences[0]));
  REQUIRE(full.units.size() == 3);
  CHECK(full.units[0].begin == 0);
  CHECK(full.units[0].end == 4);
  CHECK(full.units[0].kind == UnitKind::kEduRemainder);
  CHECK(full.units[1].begin == 4);
  CHECK(full.units[1].end == 6);
  CHECK(full.units[1].kind == UnitKind::kSyntacticDeletion);
  CHECK(full.units[2].begin == 6);
  CHECK(full.units[2].end == 7);
  CHECK(full.units[2].kind == UnitKind::kEduRemainder);
  std::vector<std::pair<int, int>> expected = {{0, 2}, {1, 0}, {2, 0}};
  CHECK(full.graph.requires_arcs == expected);
}

TEST_CASE("augmenting with no compressions is the identity") {
  Document doc = fixtures::claims_document();
  UnitDerivation rst = derive_rst_units(doc.sentences[0]);
  UnitDerivation same = augment(rst, {});
  CHECK(same.units == rst.units);
  CHECK(same.graph == rst.graph);
}

TEST_CASE("compressions crossing EDU boundaries are discarded") {
  Document doc = fixtures::claims_document();
  UnitDerivation rst = derive_rst_units(doc.sentences[0]);
  // Spans [6,10) and [14,17) both straddle an EDU boundary.
  std::vector<SyntacticCompression> crossing = {
      {0, 6, 10, CompressionPattern::kPpModifierOfNp},
      {0, 14, 17, CompressionPattern::kCoordinationSecondConjunct}};
  UnitDerivation same = augment(rst, crossing);
  CHECK(same.units == rst.units);
  CHECK(same.graph == rst.graph);
}

TEST_CASE("nested compressions keep only the maximal span") {
  Document doc = fixtures::claims_document();
  UnitDerivation rst = derive_rst_units(doc.sentences[0]);
  std::vector<SyntacticCompression> nested = {
      {0, 5, 7, CompressionPattern::kPpModifierOfNp},
      {0, 6, 7, CompressionPattern::kPpModifierOfNp}};
  UnitDerivation out = augment(rst, nested);
  // Only the [5,7) span is grafted: 3 EDUs -> 5 fragments.
  REQUIRE(out.units.size() == 5);
  CHECK(out.units[1].begin == 5);
  CHECK(out.units[1].end == 7);
}

TEST_CASE("full-mode derivation matches the merged golden structure") {
  Document doc = fixtures::claims_document();
  UnitDerivation d = build_textual_units(doc, UnitMode::kFull);
  REQUIRE(d.units.size() == 6);
  const std::vector<std::tuple<int, int, UnitKind>> expected_units = {
      {0, 5, UnitKind::kEduRemainder},        // He is a claims adjuster
      {5, 7, UnitKind::kSyntacticDeletion},   // with Aetna
      {7, 8, UnitKind::kEduRemainder},        // ,
      {8, 14, UnitKind::kEduRemainder},       // who has been ... fraud
      {14, 16, UnitKind::kSyntacticDeletion}, // and waste
      {16, 17, UnitKind::kEdu},               // .
  };
  for (size_t i = 0; i < expected_units.size(); ++i) {
    CAPTURE(i);
    CHECK(d.units[i].begin == std::get<0>(expected_units[i]));
    CHECK(d.units[i].end == std::get<1>(expected_units[i]));
    CHECK(d.units[i].kind == std::get<2>(expected_units[i]));
  }
  const std::vector<std::pair<int, int>> expected_arcs = {
      {0, 2}, {0, 5}, {1, 0}, {2, 0}, {3, 0}, {4, 3}, {5, 0}};
  CHECK(d.graph.requires_arcs == expected_arcs);
}

TEST_CASE("sentence mode yields one unit per sentence and no arcs") {
  Document doc = fixtures::acquisition_document(0.9);
  UnitDerivation d = build_textual_units(doc, UnitMode::kSentence);
  REQUIRE(d.units.size() == 2);
  CHECK(d.graph.requires_arcs.empty());
  CHECK(d.units[0].word_count() == 6);
  CHECK(d.units[1].sentence == 1);
}

TEST_CASE("edu mode concatenates per-sentence derivations") {
  std::mt19937_64 rng(5);
  Document doc = fixtures::synthetic_document(0, rng, false);
  int edu_count = 0;
  for (const Sentence& s : doc.sentences) {
    edu_count += static_cast<int>(s.edus.size());
  }
  UnitDerivation d = build_textual_units(doc, UnitMode::kEdu);
  CHECK(static_cast<int>(d.units.size()) == edu_count);
}

TEST_CASE("units partition every sentence in every mode") {
  std::mt19937_64 rng(17);
  std::vector<Document> docs = {fixtures::claims_document(),
                                fixtures::acquisition_document(0.9)};
  for (int i = 0; i < 6; ++i) {
    docs.push_back(fixtures::synthetic_document(i, rng, true));
  }
  for (const Document& doc : docs) {
    for (UnitMode mode :
         {UnitMode::kSentence, UnitMode::kEdu, UnitMode::kFull}) {
      UnitDerivation d = build_textual_units(doc, mode);
      std::vector<std::vector<bool>> covered;
      for (const Sentence& s : doc.sentences) {
        covered.emplace_back(s.tokens.size(), false);
      }
      for (size_t i = 0; i < d.units.size(); ++i) {
        CHECK(d.units[i].id == static_cast<int>(i));
        for (int t = d.units[i].begin; t < d.units[i].end; ++t) {
          CHECK_FALSE(covered[d.units[i].sentence][t]);
          covered[d.units[i].sentence][t] = true;
        }
      }
      for (const auto& sentence : covered) {
        for (bool c : sentence) CHECK(c);
      }
    }
  }
}

TEST_CASE("full-mode whole-EDU selections match edu-mode selections") {
  // Restricting full-mode closed subsets to all-or-nothing per EDU must give
  // exactly the edu-mode closed subsets: syntactic options only add choices.
  Document doc = fixtures::claims_document();
  UnitDerivation edu = build_textual_units(doc, UnitMode::kEdu);
  UnitDerivation full = build_textual_units(doc, UnitMode::kFull);

  const Sentence& s = doc.sentences[0];
  auto edu_of = [&](const TextualUnit& u) {
    for (size_t e = 0; e < s.edus.size(); ++e) {
      if (u.begin >= s.edus[e].first && u.end <= s.edus[e].second) {
        return static_cast<int>(e);
      }
    }
    return -1;
  };

  std::set<std::set<int>> edu_sets =
      closed_subsets(static_cast<int>(edu.units.size()), edu.graph);

  std::set<std::set<int>> projected;
  const int n = static_cast<int>(full.units.size());
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<bool> selected(n, false);
    for (int i = 0; i < n; ++i) selected[i] = (mask >> i) & 1u;
    if (!full.graph.closed(selected)) continue;
    // Keep only selections that take each EDU entirely or not at all.
    std::map<int, std::pair<int, int>> per_edu;  // edu -> (selected, total)
    for (int i = 0; i < n; ++i) {
      auto& entry = per_edu[edu_of(full.units[i])];
      entry.first += selected[i] ? 1 : 0;
      entry.second += 1;
    }
    bool whole = true;
    std::set<int> as_edus;
    for (const auto& [e, counts] : per_edu) {
      if (counts.first == counts.second) {
        as_edus.insert(e);
      } else if (counts.first != 0) {
        whole = false;
        break;
      }
    }
    if (whole) projected.insert(as_edus);
  }
  CHECK(projected == edu_sets);
}

TEST_CASE("derivation is deterministic") {
  Document doc = fixtures::claims_document();
  UnitDerivation a = build_textual_units(doc, UnitMode::kFull);
  UnitDerivation b = build_textual_units(doc, UnitMode::kFull);
  CHECK(a.units == b.units);
  CHECK(a.graph == b.graph);
}

TEST_CASE("dot export names every unit and arc") {
  Document doc = fixtures::claims_document();
  UnitDerivation d = build_textual_units(doc, UnitMode::kFull);
  const std::string dot = to_dot(doc, d);
  CHECK(dot.find("u0") != std::string::npos);
  CHECK(dot.find("->") != std::string::npos);
  CHECK(dot.find("with Aetna") != std::string::npos);
}
