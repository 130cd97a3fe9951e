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

#include <random>
#include <set>

#include "csumm/ilp.hpp"
#include "fixtures.hpp"

using namespace csumm;

namespace {

std::vector<TextualUnit> make_units(const std::vector<int>& lengths) {
  std::vector<TextualUnit> units;
  int cursor = 0;
  for (size_t i = 0; i < lengths.size(); ++i) {
    TextualUnit u;
    u.id = static_cast<int>(i);
    u.sentence = 0;
    u.begin = cursor;
    u.end = cursor + lengths[i];
    cursor = u.end;
    units.push_back(u);
  }
  return units;
}

// The two-unit pronoun model: unit 0 holds the name, unit 1 the pronoun,
// one replacement candidate tied to unit 1 with unit 0 as blocker.
IlpModel pronoun_model(double score0, double score1, double repl_score,
                       double budget, int delta = 0) {
  static std::vector<TextualUnit> units;
  static std::vector<ReplacementCandidate> candidates;
  units = make_units({6, 6});
  candidates.clear();
  ReplacementCandidate cand;
  cand.unit = 1;
  cand.ordinal = 0;
  cand.entity = 0;
  cand.delta_words = delta;
  Token t;
  t.text = "Kellogg";
  cand.replacement.push_back(t);
  cand.blocker_units = {0};
  candidates.push_back(cand);
  RequirementGraph graph;
  return build_model(units, graph, candidates, {}, {score0, score1},
                     {repl_score}, budget);
}

}  // namespace

TEST_CASE("budget admits exactly the subsets within k") {
  auto units = make_units({5, 7});
  RequirementGraph graph;
  IlpModel model = build_model(units, graph, {}, {}, {1.0, 1.0}, {}, 10.0);
  // Enumerate feasible unit sets through the independent validator.
  std::set<std::set<int>> feasible;
  for (uint32_t mask = 0; mask < 4; ++mask) {
    Solution s;
    double len = 0.0;
    for (int i = 0; i < 2; ++i) {
      if ((mask >> i) & 1u) {
        s.unit_ids.push_back(i);
        len += units[i].word_count();
        s.objective += 1.0;
      }
    }
    if (validate_solution(model, s).empty()) {
      feasible.insert({s.unit_ids.begin(), s.unit_ids.end()});
    }
  }
  std::set<std::set<int>> expected = {{}, {0}, {1}};
  CHECK(feasible == expected);
}

TEST_CASE("positive scores without budget pressure select everything") {
  Document doc = fixtures::claims_document();
  UnitDerivation d = build_textual_units(doc, UnitMode::kFull);
  std::vector<double> scores(d.units.size(), 1.0);
  IlpModel model = build_model(d.units, d.graph, {}, {}, scores, {}, 1000.0);
  Solution s = solve(model);
  CHECK(s.unit_ids == std::vector<int>{0, 1, 2, 3, 4, 5});
  CHECK(s.objective == doctest::Approx(6.0));
  CHECK(validate_solution(model, s).empty());
}

TEST_CASE("selecting the pronoun unit alone forces the rewrite") {
  // Frozen expectation from enumerating all eight configurations: with unit
  // scores (-1, +2) and a zero-score replacement, the optimum is unit 1 plus
  // the applied rewrite at objective 2.
  IlpModel model = pronoun_model(-1.0, 2.0, 0.0, 100.0);
  Solution s = solve(model);
  CHECK(s.unit_ids == std::vector<int>{1});
  CHECK(s.replacement_indices == std::vector<int>{0});
  CHECK(s.objective == doctest::Approx(2.0));
  Solution b = brute_force_solve(model);
  CHECK(b.unit_ids == s.unit_ids);
  CHECK(b.replacement_indices == s.replacement_indices);
  CHECK(b.objective == doctest::Approx(s.objective));
}

TEST_CASE("including the blocker suppresses the rewrite") {
  IlpModel model = pronoun_model(3.0, 2.0, 0.5, 100.0);
  Solution s = solve(model);
  CHECK(s.unit_ids == std::vector<int>{0, 1});
  CHECK(s.replacement_indices.empty());
  CHECK(validate_solution(model, s).empty());
}

TEST_CASE("all-negative scores yield the empty summary") {
  auto units = make_units({3, 4, 5});
  RequirementGraph graph;
  IlpModel model =
      build_model(units, graph, {}, {}, {-1.0, -2.0, -0.5}, {}, 12.0);
  Solution s = solve(model);
  CHECK(s.unit_ids.empty());
  CHECK(s.objective == 0.0);
}

TEST_CASE("duplicate unit ids are rejected at model build") {
  auto units = make_units({3, 4});
  units[1].id = 0;
  RequirementGraph graph;
  CHECK_THROWS_AS(build_model(units, graph, {}, {}, {}, {}, 10.0),
                  ModelBuildError);
}

TEST_CASE("single-cover ngram follows its unit") {
  auto units = make_units({3, 4});
  RequirementGraph graph;
  IlpModel model = build_model(units, graph, {}, {}, {0.0, 0.0}, {}, 100.0);
  NgramStats stats;
  stats.n = 1;
  stats.entries["kellogg"] = 1;
  stats.total = 1;
  NgramCoverage coverage;
  coverage.covers["kellogg"].first = {1};
  add_loss_augmentation(&model, stats, coverage, 1.0);
  Solution s = solve(model);
  CHECK(s.unit_ids == std::vector<int>{1});
  CHECK(s.active_ngrams == std::vector<std::string>{"kellogg"});
  CHECK(s.objective == doctest::Approx(1.0));
}

TEST_CASE("uncovered ngrams stay inactive") {
  auto units = make_units({3});
  RequirementGraph graph;
  IlpModel model = build_model(units, graph, {}, {}, {1.0}, {}, 100.0);
  NgramStats stats;
  stats.n = 1;
  stats.entries["ghost"] = 2;
  stats.total = 2;
  add_loss_augmentation(&model, stats, NgramCoverage{}, 1.0);
  Solution s = solve(model);
  CHECK(s.unit_ids == std::vector<int>{0});
  CHECK(s.active_ngrams.empty());
  CHECK(s.objective == doctest::Approx(1.0));
}

TEST_CASE("zero-total stats add no ngram variables") {
  auto units = make_units({3});
  RequirementGraph graph;
  IlpModel model = build_model(units, graph, {}, {}, {1.0}, {}, 100.0);
  const size_t vars = model.vars.size();
  const size_t rows = model.rows.size();
  add_loss_augmentation(&model, NgramStats{}, NgramCoverage{}, 1.0);
  CHECK(model.vars.size() == vars);
  CHECK(model.rows.size() == rows);
}

TEST_CASE("doubly covered types count once") {
  auto units = make_units({3, 3});
  RequirementGraph graph;
  IlpModel model = build_model(units, graph, {}, {}, {0.1, 0.1}, {}, 100.0);
  NgramStats stats;
  stats.n = 1;
  stats.entries["shared"] = 2;
  stats.total = 2;
  NgramCoverage coverage;
  coverage.covers["shared"].first = {0, 1};
  add_loss_augmentation(&model, stats, coverage, 1.0);
  Solution s = solve(model);
  CHECK(s.unit_ids == std::vector<int>{0, 1});
  // 0.1 + 0.1 for the units plus 1.0 once for the type.
  CHECK(s.objective == doctest::Approx(1.2));
  Solution b = brute_force_solve(model);
  CHECK(b.objective == doctest::Approx(s.objective));
}

TEST_CASE("conflicting fixed variables are infeasible in both solvers") {
  IlpModel model = pronoun_model(1.0, 1.0, 0.0, 100.0);
  model.fix(2, true);   // apply the rewrite
  model.fix(1, false);  // but forbid its unit
  CHECK_THROWS_AS(solve(model), InfeasibleError);
  CHECK_THROWS_AS(brute_force_solve(model), InfeasibleError);
}

TEST_CASE("empty model solves to the empty solution") {
  RequirementGraph graph;
  IlpModel model = build_model({}, graph, {}, {}, {}, {}, 0.0);
  Solution s = solve(model);
  CHECK(s.unit_ids.empty());
  CHECK(s.objective == 0.0);
  Solution b = brute_force_solve(model);
  CHECK(b.objective == 0.0);
}

TEST_CASE("brute force refuses oversized instances") {
  auto units = make_units(std::vector<int>(21, 1));
  RequirementGraph graph;
  IlpModel model = build_model(units, graph, {}, {},
                               std::vector<double>(21, 1.0), {}, 21.0);
  CHECK_THROWS_AS(brute_force_solve(model), ModelBuildError);
  CHECK_NOTHROW(solve(model));
}

TEST_CASE("twelve-unit random instance matches brute force") {
  std::mt19937_64 rng(101);
  fixtures::RandomInstance inst = fixtures::random_instance(rng, 12, 3);
  IlpModel model = fixtures::build_random_model(inst);
  Solution a = solve(model);
  Solution b = brute_force_solve(model);
  CHECK(a.objective == doctest::Approx(b.objective).epsilon(1e-9));
}

TEST_CASE("solver matches brute force on random instances") {
  std::mt19937_64 rng(202);
  int solved = 0;
  int infeasible = 0;
  for (int trial = 0; trial < 60; ++trial) {
    fixtures::RandomInstance inst = fixtures::random_instance(rng, 10, 4);
    IlpModel model;
    try {
      model = fixtures::build_random_model(inst);
    } catch (const InfeasibleError&) {
      continue;  // contradictory fixes straight from the generator
    }
    bool solver_infeasible = false;
    bool brute_infeasible = false;
    Solution a, b;
    try {
      a = solve(model);
    } catch (const InfeasibleError&) {
      solver_infeasible = true;
    }
    try {
      b = brute_force_solve(model);
    } catch (const InfeasibleError&) {
      brute_infeasible = true;
    }
    CHECK(solver_infeasible == brute_infeasible);
    if (solver_infeasible) {
      ++infeasible;
      continue;
    }
    ++solved;
    CAPTURE(trial);
    CHECK(std::abs(a.objective - b.objective) <= 1e-9);
    CHECK(a.unit_ids == b.unit_ids);
    CHECK(a.replacement_indices == b.replacement_indices);
    CHECK(validate_solution(model, a).empty());
    CHECK(validate_solution(model, b).empty());
  }
  CHECK(solved > 20);
}

TEST_CASE("optimum objective is non-decreasing in the budget") {
  std::mt19937_64 rng(303);
  for (int trial = 0; trial < 10; ++trial) {
    fixtures::RandomInstance inst = fixtures::random_instance(rng, 8, 2);
    inst.fixes.clear();
    double previous = -1e300;
    for (double k = 0; k <= 40; k += 4) {
      inst.budget = k;
      IlpModel model = fixtures::build_random_model(inst);
      Solution s = solve(model);
      CHECK(s.objective >= previous - 1e-9);
      previous = s.objective;
    }
  }
}

TEST_CASE("solutions are closed under requirement arcs") {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 25; ++trial) {
    fixtures::RandomInstance inst = fixtures::random_instance(rng, 10, 3);
    inst.fixes.clear();
    IlpModel model = fixtures::build_random_model(inst);
    Solution s = solve(model);
    std::set<int> selected(s.unit_ids.begin(), s.unit_ids.end());
    for (auto [from, to] : inst.graph.requires_arcs) {
      if (selected.count(from)) CHECK(selected.count(to));
    }
  }
}

TEST_CASE("included pronouns are always supported") {
  // In every solution, an included pronoun unit has the rewrite applied, a
  // blocker included, or enough antecedent mass included.
  std::mt19937_64 rng(505);
  for (int trial = 0; trial < 40; ++trial) {
    fixtures::RandomInstance inst = fixtures::random_instance(rng, 9, 3);
    inst.fixes.clear();
    IlpModel model = fixtures::build_random_model(inst);
    Solution s = solve(model);
    std::set<int> selected(s.unit_ids.begin(), s.unit_ids.end());
    std::set<int> applied(s.replacement_indices.begin(),
                          s.replacement_indices.end());
    for (size_t c = 0; c < inst.candidates.size(); ++c) {
      const ReplacementCandidate& cand = inst.candidates[c];
      if (!selected.count(cand.unit)) {
        CHECK_FALSE(applied.count(static_cast<int>(c)));
        continue;
      }
      bool blocked = false;
      for (int b : cand.blocker_units) blocked = blocked || selected.count(b);
      bool earlier_applied = false;
      for (size_t c2 = 0; c2 < c; ++c2) {
        if (inst.candidates[c2].entity == cand.entity &&
            applied.count(static_cast<int>(c2))) {
          earlier_applied = true;
        }
      }
      CHECK((applied.count(static_cast<int>(c)) || blocked || earlier_applied));
    }
    for (const AntecedentConstraint& ac : inst.constraints) {
      if (ac.in_unit_mass >= ac.beta) continue;
      if (!selected.count(ac.pronoun_unit)) continue;
      CHECK_FALSE(ac.infeasible);  // infeasible units are fixed to zero
      double mass = 0.0;
      for (auto [unit, m] : ac.unit_mass) {
        if (selected.count(unit)) mass += m;
      }
      CHECK(mass >= ac.beta - 1e-9);
    }
  }
}

TEST_CASE("validator reports violations in corrupted solutions") {
  IlpModel model = pronoun_model(-1.0, 2.0, 0.0, 100.0);
  Solution good = solve(model);
  REQUIRE(validate_solution(model, good).empty());

  Solution bad = good;
  bad.replacement_indices.clear();  // forcing row now fails
  CHECK_FALSE(validate_solution(model, bad).empty());

  Solution wrong_objective = good;
  wrong_objective.objective += 1.0;
  CHECK_FALSE(validate_solution(model, wrong_objective).empty());

  Solution over_budget = good;
  over_budget = solve(pronoun_model(1.0, 1.0, 0.0, 100.0));
  IlpModel tight = pronoun_model(1.0, 1.0, 0.0, 6.0);
  CHECK_FALSE(validate_solution(tight, over_budget).empty());
}

TEST_CASE("lp export lists objective, rows, and binaries") {
  IlpModel model = pronoun_model(-1.0, 2.0, 0.25, 9.0);
  const std::string lp = to_lp_format(model, "sample");
  CHECK(lp.find("Maximize") != std::string::npos);
  CHECK(lp.find("Subject To") != std::string::npos);
  CHECK(lp.find("u0") != std::string::npos);
  CHECK(lp.find("r0") != std::string::npos);
  CHECK(lp.find("Binaries") != std::string::npos);
  CHECK(lp.find("<=") != std::string::npos);
}
