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

// Shared fixture builders. Everything goes through the JSON loader so the
// fixtures double as interchange-format coverage.

#ifndef CSUMM_TESTS_FIXTURES_HPP_
#define CSUMM_TESTS_FIXTURES_HPP_

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "csumm/anaphora.hpp"
#include "csumm/compress.hpp"
#include "csumm/corpus.hpp"
#include "csumm/ilp.hpp"

namespace fixtures {

// JSON builders -------------------------------------------------------------

inline std::string token_json(const std::string& text, const std::string& pos) {
  return "{\"text\":\"" + text + "\",\"pos\":\"" + pos + "\"}";
}

// Tokens given as "text/POS" strings separated by spaces.
inline std::string tokens_json(const std::string& spec) {
  std::istringstream in(spec);
  std::string item;
  std::string out = "[";
  bool first = true;
  while (in >> item) {
    const size_t slash = item.rfind('/');
    const std::string text = item.substr(0, slash);
    const std::string pos = slash == std::string::npos ? "X" : item.substr(slash + 1);
    if (!first) out += ",";
    out += token_json(text, pos);
    first = false;
  }
  return out + "]";
}

// The three-EDU sentence with one PP modifier and one NP coordination, used
// by the structure golden tests.
inline std::string claims_sentence_json() {
  return std::string("{") +
         "\"tokens\":" +
         tokens_json("He/PRP is/VBZ a/DT claims/NNS adjuster/NN with/IN "
                     "Aetna/NNP ,/, who/WP has/VBZ been/VBN investigating/VBG "
                     "insurance/NN fraud/NN and/CC waste/NN ./.") +
         ",\"parse\":\"(S (NP (PRP He)) (VP (VBZ is) (NP (NP (NP (DT a) (NNS "
         "claims) (NN adjuster)) (PP (IN with) (NNP Aetna))) (, ,) (SBAR "
         "(WHNP (WP who)) (S (VP (VBZ has) (VP (VBN been) (VP (VBG "
         "investigating) (NP (NP (NN insurance) (NN fraud)) (CC and) (NP (NN "
         "waste)))))))))) (. .))\"" +
         ",\"edus\":[[0,8],[8,16],[16,17]]" +
         ",\"discourse_deps\":[" +
         "{\"edu\":0,\"head\":-1,\"relation\":\"root\",\"same_unit\":2}," +
         "{\"edu\":1,\"head\":0,\"relation\":\"elaboration\",\"same_unit\":-1}," +
         "{\"edu\":2,\"head\":0,\"relation\":\"same-unit\",\"same_unit\":0}]" +
         ",\"paragraph\":0,\"starts_paragraph\":true}";
}

inline csumm::Document claims_document() {
  const std::string json = std::string("{\"id\":\"claims\",\"sentences\":[") +
                           claims_sentence_json() +
                           "],\"reference\":{\"tokens\":" +
                           tokens_json("adjuster/NN investigated/VBD "
                                       "fraud/NN") +
                           "}}";
  return csumm::load_document(json, csumm::StopwordList::builtin());
}

// Two-sentence acquisition story with one pronoun; `posterior` controls the
// coreference confidence and `possessive` switches the pronoun form.
inline csumm::Document acquisition_document(double posterior,
                                            bool possessive = false) {
  std::ostringstream os;
  os << "{\"id\":\"acq\",\"sentences\":[";
  os << "{\"tokens\":"
     << tokens_json("Kellogg/NNP agreed/VBD to/TO acquire/VB Keebler/NNP ./.")
     << ",\"parse\":\"(S (NP (NNP Kellogg)) (VP (VBD agreed) (S (VP (TO to) "
        "(VP (VB acquire) (NP (NNP Keebler)))))) (. .))\""
     << ",\"edus\":[[0,6]],\"discourse_deps\":[{\"edu\":0,\"head\":-1,"
        "\"relation\":\"root\",\"same_unit\":-1}],\"paragraph\":0,"
        "\"starts_paragraph\":true},";
  if (!possessive) {
    os << "{\"tokens\":"
       << tokens_json("It/PRP paid/VBD $/$ 4.4/CD billion/CD ./.")
       << ",\"parse\":\"(S (NP (PRP It)) (VP (VBD paid) (NP ($ $) (CD 4.4) "
          "(CD billion))) (. .))\"";
  } else {
    os << "{\"tokens\":"
       << tokens_json("Its/PRP$ profits/NNS rose/VBD very/RB sharply/RB ./.")
       << ",\"parse\":\"(S (NP (PRP$ Its) (NNS profits)) (VP (VBD rose) "
          "(ADVP (RB very) (RB sharply))) (. .))\"";
  }
  os << ",\"edus\":[[0,6]],\"discourse_deps\":[{\"edu\":0,\"head\":-1,"
        "\"relation\":\"root\",\"same_unit\":-1}],\"paragraph\":0,"
        "\"starts_paragraph\":false}";
  os << "],\"coref\":{\"mentions\":["
     << "{\"id\":0,\"sentence\":0,\"span\":[0,1],\"entity\":0,\"type\":"
        "\"proper\",\"ne_span\":[0,1]},"
     << "{\"id\":1,\"sentence\":0,\"span\":[4,5],\"entity\":1,\"type\":"
        "\"proper\",\"ne_span\":[4,5]},"
     << "{\"id\":2,\"sentence\":1,\"span\":[0,1],\"entity\":0,\"type\":"
        "\"pronominal\",\"ne_span\":null}"
     << "],\"pronouns\":[{\"sentence\":1,\"token\":0,\"possessive\":"
     << (possessive ? "true" : "false")
     << ",\"candidates\":[{\"mention\":0,\"posterior\":" << posterior
     << "}]}]}";
  os << ",\"reference\":{\"tokens\":"
     << tokens_json("Kellogg/NNP acquired/VBD Keebler/NNP") << "}}";
  return csumm::load_document(os.str(), csumm::StopwordList::builtin());
}

// A minimal well formed single-sentence document.
inline std::string minimal_document_json(const std::string& id = "mini") {
  return "{\"id\":\"" + id + "\",\"sentences\":[{\"tokens\":" +
         tokens_json("Prices/NNS fell/VBD ./.") +
         ",\"parse\":\"(S (NP (NNS Prices)) (VP (VBD fell)) (. .))\"" +
         ",\"edus\":[[0,3]],\"discourse_deps\":[{\"edu\":0,\"head\":-1,"
         "\"relation\":\"root\",\"same_unit\":-1}],\"paragraph\":0,"
         "\"starts_paragraph\":true}],\"reference\":{\"tokens\":" +
         tokens_json("Prices/NNS fell/VBD") + "}}";
}

// Synthetic training corpus ------------------------------------------------
//
// References are verbatim concatenations of 2-3 selectable units whose
// content words come from a dedicated pool, so a lexical model can learn to
// recover them exactly.

struct SyntheticOptions {
  int documents = 20;
  uint64_t seed = 7;
  bool with_pronouns = true;
};

inline csumm::Document synthetic_document(int index, std::mt19937_64& rng,
                                          bool with_pronouns) {
  auto pick = [&rng](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<uint64_t>(hi - lo + 1));
  };
  const int sentences = pick(4, 5);
  std::vector<int> chosen;  // sentence indices whose root EDU is extracted
  while (chosen.empty()) {
    for (int s = 0; s < sentences; ++s) {
      if (pick(0, 99) < 45 && static_cast<int>(chosen.size()) < 3) {
        chosen.push_back(s);
      }
    }
    if (static_cast<int>(chosen.size()) < 2) chosen.clear();
  }
  auto is_chosen = [&](int s) {
    for (int c : chosen) {
      if (c == s) return true;
    }
    return false;
  };

  std::ostringstream doc;
  doc << "{\"id\":\"synth" << index << "\",\"sentences\":[";
  std::ostringstream reference;
  bool first_ref = true;
  std::vector<std::string> mention_rows;
  std::vector<std::string> pronoun_rows;
  int mention_id = 0;
  int pronoun_anchor_sentence = -1;

  for (int s = 0; s < sentences; ++s) {
    const char* pool = is_chosen(s) ? "alpha" : "beta";
    const int words = pick(3, 5);
    std::vector<std::string> toks;
    const bool name_sentence =
        with_pronouns && is_chosen(s) && pronoun_anchor_sentence < 0;
    const bool pronoun_sentence = with_pronouns && is_chosen(s) &&
                                  pronoun_anchor_sentence >= 0 &&
                                  pronoun_rows.empty();
    if (name_sentence) {
      toks.push_back("Corp" + std::to_string(index % 7));
      pronoun_anchor_sentence = s;
    } else if (pronoun_sentence) {
      toks.push_back("It");
    }
    for (int w = static_cast<int>(toks.size()); w < words; ++w) {
      toks.push_back(std::string(pool) + std::to_string(pick(0, 19)));
    }
    toks.push_back(".");

    if (name_sentence) {
      mention_rows.push_back(
          "{\"id\":" + std::to_string(mention_id) + ",\"sentence\":" +
          std::to_string(s) +
          ",\"span\":[0,1],\"entity\":0,\"type\":\"proper\",\"ne_span\":[0,1]}");
      ++mention_id;
    } else if (pronoun_sentence) {
      mention_rows.push_back("{\"id\":" + std::to_string(mention_id) +
                             ",\"sentence\":" + std::to_string(s) +
                             ",\"span\":[0,1],\"entity\":0,\"type\":"
                             "\"pronominal\",\"ne_span\":null}");
      pronoun_rows.push_back(
          "{\"sentence\":" + std::to_string(s) +
          ",\"token\":0,\"possessive\":false,\"candidates\":[{\"mention\":0,"
          "\"posterior\":0.9}]}");
      ++mention_id;
    }

    if (s) doc << ",";
    doc << "{\"tokens\":[";
    std::ostringstream parse;
    parse << "(S";
    for (size_t t = 0; t < toks.size(); ++t) {
      if (t) doc << ",";
      const std::string pos = toks[t] == "." ? "." : "NN";
      doc << token_json(toks[t], pos);
      parse << " (" << (toks[t] == "." ? "." : "NN") << " " << toks[t] << ")";
    }
    parse << ")";
    doc << "],\"parse\":\"" << parse.str() << "\"";
    doc << ",\"edus\":[[0," << toks.size() << "]]";
    doc << ",\"discourse_deps\":[{\"edu\":0,\"head\":-1,\"relation\":\"root\","
           "\"same_unit\":-1}]";
    doc << ",\"paragraph\":" << s / 2 << ",\"starts_paragraph\":"
        << (s % 2 == 0 ? "true" : "false") << "}";

    if (is_chosen(s)) {
      for (const std::string& t : toks) {
        if (!first_ref) reference << ",";
        reference << token_json(t, t == "." ? "." : "NN");
        first_ref = false;
      }
    }
  }
  doc << "],\"coref\":{\"mentions\":[";
  for (size_t i = 0; i < mention_rows.size(); ++i) {
    if (i) doc << ",";
    doc << mention_rows[i];
  }
  doc << "],\"pronouns\":[";
  for (size_t i = 0; i < pronoun_rows.size(); ++i) {
    if (i) doc << ",";
    doc << pronoun_rows[i];
  }
  doc << "]}";
  doc << ",\"reference\":{\"tokens\":[" << reference.str() << "]}}";
  return csumm::load_document(doc.str(), csumm::StopwordList::builtin());
}

inline std::vector<csumm::Document> synthetic_corpus(SyntheticOptions options) {
  std::mt19937_64 rng(options.seed);
  std::vector<csumm::Document> docs;
  for (int d = 0; d < options.documents; ++d) {
    docs.push_back(synthetic_document(d, rng, options.with_pronouns));
  }
  return docs;
}

// Adversarial pair for the orphan diagnostic: the reference rewards only the
// pronoun-bearing second sentence and the budget fits only that sentence.
inline csumm::Document orphan_bait_document(double posterior) {
  std::ostringstream os;
  os << "{\"id\":\"bait\",\"sentences\":[";
  os << "{\"tokens\":" << tokens_json("Kellogg/NNP expanded/VBD ./.")
     << ",\"parse\":\"(S (NP (NNP Kellogg)) (VP (VBD expanded)) (. .))\""
     << ",\"edus\":[[0,3]],\"discourse_deps\":[{\"edu\":0,\"head\":-1,"
        "\"relation\":\"root\",\"same_unit\":-1}],\"paragraph\":0,"
        "\"starts_paragraph\":true},";
  os << "{\"tokens\":" << tokens_json("It/PRP bought/VBD Keebler/NNP ./.")
     << ",\"parse\":\"(S (NP (PRP It)) (VP (VBD bought) (NP (NNP Keebler))) "
        "(. .))\""
     << ",\"edus\":[[0,4]],\"discourse_deps\":[{\"edu\":0,\"head\":-1,"
        "\"relation\":\"root\",\"same_unit\":-1}],\"paragraph\":0,"
        "\"starts_paragraph\":false}";
  os << "],\"coref\":{\"mentions\":["
     << "{\"id\":0,\"sentence\":0,\"span\":[0,1],\"entity\":0,\"type\":"
        "\"proper\",\"ne_span\":[0,1]},"
     << "{\"id\":1,\"sentence\":1,\"span\":[0,1],\"entity\":0,\"type\":"
        "\"pronominal\",\"ne_span\":null}"
     << "],\"pronouns\":[{\"sentence\":1,\"token\":0,\"possessive\":false,"
     << "\"candidates\":[{\"mention\":0,\"posterior\":" << posterior << "}]}]}";
  os << ",\"reference\":{\"tokens\":"
     << tokens_json("It/PRP bought/VBD Keebler/NNP ./.") << "}}";
  return csumm::load_document(os.str(), csumm::StopwordList::builtin());
}

// Random ILP instances -------------------------------------------------------

struct RandomInstance {
  std::vector<csumm::TextualUnit> units;
  csumm::RequirementGraph graph;
  std::vector<csumm::ReplacementCandidate> candidates;
  std::vector<csumm::AntecedentConstraint> constraints;
  std::vector<double> unit_scores;
  std::vector<double> repl_scores;
  double budget = 0.0;
  csumm::NgramStats stats;
  csumm::NgramCoverage coverage;
  double loss_weight = 0.0;
  std::vector<std::pair<int, bool>> fixes;  // (selection var, value)
};

inline RandomInstance random_instance(std::mt19937_64& rng, int max_units = 15,
                                      int max_repls = 5) {
  auto pick = [&rng](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<uint64_t>(hi - lo + 1));
  };
  auto uniform = [&rng](double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) /
                             static_cast<double>(1ull << 53));
  };

  RandomInstance inst;
  const int n = pick(1, max_units);
  int total_len = 0;
  for (int i = 0; i < n; ++i) {
    csumm::TextualUnit u;
    u.id = i;
    u.sentence = 0;
    u.begin = total_len;
    u.end = total_len + pick(1, 9);
    total_len = u.end;
    inst.units.push_back(u);
    inst.unit_scores.push_back(uniform(-2.0, 2.0));
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && pick(0, 99) < 8) inst.graph.add(i, j);
    }
  }
  if (n >= 2 && pick(0, 99) < 30) {
    const int a = pick(0, n - 2);
    inst.graph.add(a, a + 1);
    inst.graph.add(a + 1, a);
  }
  inst.graph.finalize();

  const int m = pick(0, max_repls);
  for (int c = 0; c < m; ++c) {
    csumm::ReplacementCandidate cand;
    cand.unit = pick(0, n - 1);
    cand.ordinal = c;
    cand.entity = pick(0, 2);
    cand.delta_words = pick(0, 3);
    csumm::Token t;
    t.text = "name" + std::to_string(c);
    cand.replacement.push_back(t);
    for (int b = 0; b < cand.unit; ++b) {
      if (pick(0, 99) < 25) cand.blocker_units.push_back(b);
    }
    inst.candidates.push_back(cand);
    inst.repl_scores.push_back(uniform(-1.0, 1.0));
  }

  const int ac = pick(0, 2);
  for (int k = 0; k < ac && n >= 2; ++k) {
    csumm::AntecedentConstraint c;
    c.pronoun_unit = pick(1, n - 1);
    c.beta = 0.6;
    double total = 0.0;
    for (int u = 0; u < c.pronoun_unit; ++u) {
      if (pick(0, 99) < 40) {
        const double mass = uniform(0.05, 0.6);
        c.unit_mass.emplace_back(u, mass);
        total += mass;
      }
    }
    c.in_unit_mass = pick(0, 99) < 20 ? uniform(0.0, 0.8) : 0.0;
    c.infeasible = total < c.beta;
    inst.constraints.push_back(c);
  }

  inst.budget = pick(0, total_len);

  if (pick(0, 99) < 60) {
    inst.loss_weight = std::vector<double>{1.0, -1.0, 0.7}[pick(0, 2)];
    const int types = pick(1, 6);
    for (int t = 0; t < types; ++t) {
      const std::string key = "type" + std::to_string(t);
      inst.stats.entries[key] = pick(1, 3);
      inst.stats.total += inst.stats.entries[key];
      auto& cover = inst.coverage.covers[key];
      for (int u = 0; u < n; ++u) {
        if (pick(0, 99) < 25) cover.first.push_back(u);
      }
      for (int c = 0; c < m; ++c) {
        if (pick(0, 99) < 15) cover.second.push_back(c);
      }
    }
  }

  const int sel = n + m;
  if (pick(0, 99) < 25) {
    inst.fixes.emplace_back(pick(0, sel - 1), pick(0, 1) == 1);
  }
  return inst;
}

inline csumm::IlpModel build_random_model(const RandomInstance& inst) {
  csumm::IlpModel model = csumm::build_model(
      inst.units, inst.graph, inst.candidates, inst.constraints,
      inst.unit_scores, inst.repl_scores, inst.budget);
  if (inst.stats.total > 0) {
    csumm::add_loss_augmentation(&model, inst.stats, inst.coverage,
                                 inst.loss_weight);
  }
  for (auto [var, value] : inst.fixes) model.fix(var, value);
  return model;
}

}  // namespace fixtures

#endif  // CSUMM_TESTS_FIXTURES_HPP_
