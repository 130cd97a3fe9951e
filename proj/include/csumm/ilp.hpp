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

#ifndef CSUMM_ILP_HPP_
#define CSUMM_ILP_HPP_

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "csumm/anaphora.hpp"
#include "csumm/compress.hpp"
#include "csumm/corpus.hpp"

namespace csumm {

struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ModelBuildError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class VarKind { kUnit, kReplacement, kNgram };

struct IlpVar {
  VarKind kind = VarKind::kUnit;
  int ref = 0;        // unit id / replacement index / n-gram index
  double objective = 0.0;
  double words = 0.0;  // contribution to the length constraint
};

enum class RowKind {
  kBudget,
  kRequirement,
  kLinkage,
  kBlocking,
  kForcing,
  kAntecedent,
  kNgramLink,
};

// One linear constraint: sum(coeff * var) <= rhs over binary variables.
struct IlpRow {
  RowKind kind;
  std::vector<std::pair<int, double>> terms;
  double rhs = 0.0;
  std::string tag;
};

// The extraction program: binary unit variables (objective w.f(u), weight
// len(u)), binary replacement variables (objective w.f(r), weight
// delta_words), optional binary n-gram variables with gain per covered type,
// all under a word budget plus the grammaticality/anaphora rows. Selection
// variables are units then replacements; n-gram variables follow and are
// functionally determined (a type is active iff a covering selection
// variable is on).
struct IlpModel {
  std::vector<IlpVar> vars;
  std::vector<IlpRow> rows;
  std::vector<int8_t> fixed;  // -1 free, 0, 1 (selection vars only)
  double budget = 0.0;
  int num_units = 0;
  int num_selection_vars = 0;

  std::vector<std::string> ngram_keys;          // per n-gram variable
  std::vector<std::vector<int>> ngram_covers;   // covering selection vars

  std::unordered_map<int, int> unit_var;        // unit id -> var index
  const std::vector<ReplacementCandidate>* candidates = nullptr;

  int var_count() const { return static_cast<int>(vars.size()); }
  void fix(int var_index, bool value);
};

struct Solution {
  std::vector<int> unit_ids;             // sorted
  std::vector<int> replacement_indices;  // sorted, into the candidates list
  std::vector<std::string> active_ngrams;
  double objective = 0.0;
  bool proven_optimal = false;
};

// Maps a reference n-gram type to the selection variables whose rendered
// tokens contain it: unit ids, and replacement candidate indices.
struct NgramCoverage {
  std::map<std::string, std::pair<std::vector<int>, std::vector<int>>> covers;
};

// Assembles the extraction model. unit_scores is indexed by unit id,
// repl_scores by candidate index (both may be empty for all-zero scores).
// Pronoun units carrying an unsatisfiable antecedent constraint are fixed to
// zero unless their own unit holds candidate mass >= beta.
IlpModel build_model(const std::vector<TextualUnit>& units,
                     const RequirementGraph& graph,
                     const std::vector<ReplacementCandidate>& candidates,
                     const std::vector<AntecedentConstraint>& constraints,
                     const std::vector<double>& unit_scores,
                     const std::vector<double>& repl_scores, double budget);

// Adds one binary variable per reference n-gram type with objective
// loss_weight * count/total and an upper link g <= sum(covering vars); with
// a negative loss_weight the lower links var <= g are added as well so the
// type is forced on when covered. A zero total adds nothing.
void add_loss_augmentation(IlpModel* model, const NgramStats& stats,
                           const NgramCoverage& coverage, double loss_weight);

// Exact maximization by depth-first branch and bound over the selection
// variables with an admissible fractional-knapsack bound; n-gram variables
// take their covered/uncovered value. Among optima the first solution in
// branch order wins, i.e. the assignment that excludes the lowest-id
// variable wherever two optima differ. Throws InfeasibleError when fixed
// assignments admit no feasible completion.
Solution solve(const IlpModel& model);

// Independent exhaustive oracle over all 2^n selection assignments (n <= 20,
// otherwise throws ModelBuildError). Shares the model representation but no
// search code with solve(); ties break identically.
Solution brute_force_solve(const IlpModel& model);

// Re-checks a solution against every row, the fixed assignments, and the
// recomputed objective. Returns human-readable violations; empty means valid.
std::vector<std::string> validate_solution(const IlpModel& model,
                                           const Solution& solution);

// CPLEX-style LP text rendering of the model, for external cross-checks.
std::string to_lp_format(const IlpModel& model, const std::string& name);

}  // namespace csumm

#endif  // CSUMM_ILP_HPP_
