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

#include "csumm/ilp.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace csumm {

namespace {

constexpr double kRowEps = 1e-9;
constexpr double kPruneEps = 1e-12;

std::string row_term_name(const IlpModel& model, int var) {
  const IlpVar& v = model.vars[var];
  switch (v.kind) {
    case VarKind::kUnit: return "u" + std::to_string(v.ref);
    case VarKind::kReplacement: return "r" + std::to_string(v.ref);
    case VarKind::kNgram: return "g" + std::to_string(v.ref);
  }
  return "v" + std::to_string(var);
}

}  // namespace

void IlpModel::fix(int var_index, bool value) {
  if (var_index < 0 || var_index >= num_selection_vars) {
    throw ModelBuildError("fix() applies to selection variables only");
  }
  const int8_t v = value ? 1 : 0;
  if (fixed[var_index] >= 0 && fixed[var_index] != v) {
    throw InfeasibleError("variable " + row_term_name(*this, var_index) +
                          " fixed to both 0 and 1");
  }
  fixed[var_index] = v;
}

IlpModel build_model(const std::vector<TextualUnit>& units,
                     const RequirementGraph& graph,
                     const std::vector<ReplacementCandidate>& candidates,
                     const std::vector<AntecedentConstraint>& constraints,
                     const std::vector<double>& unit_scores,
                     const std::vector<double>& repl_scores, double budget) {
  if (budget < 0) throw ModelBuildError("budget must be >= 0");
  IlpModel model;
  model.budget = budget;
  model.candidates = &candidates;

  for (size_t i = 0; i < units.size(); ++i) {
    const TextualUnit& u = units[i];
    if (!model.unit_var.emplace(u.id, static_cast<int>(i)).second) {
      throw ModelBuildError("duplicate unit id " + std::to_string(u.id));
    }
    IlpVar var;
    var.kind = VarKind::kUnit;
    var.ref = u.id;
    var.objective = u.id < static_cast<int>(unit_scores.size())
                        ? unit_scores[u.id]
                        : 0.0;
    var.words = u.word_count();
    model.vars.push_back(var);
  }
  model.num_units = static_cast<int>(units.size());

  auto unit_index = [&](int unit_id) {
    auto it = model.unit_var.find(unit_id);
    if (it == model.unit_var.end()) {
      throw ModelBuildError("unknown unit id " + std::to_string(unit_id));
    }
    return it->second;
  };

  for (size_t c = 0; c < candidates.size(); ++c) {
    IlpVar var;
    var.kind = VarKind::kReplacement;
    var.ref = static_cast<int>(c);
    var.objective = c < repl_scores.size() ? repl_scores[c] : 0.0;
    var.words = candidates[c].delta_words;
    model.vars.push_back(var);
  }
  model.num_selection_vars = static_cast<int>(model.vars.size());
  model.fixed.assign(model.num_selection_vars, -1);

  // Length constraint over every word-bearing variable.
  {
    IlpRow row;
    row.kind = RowKind::kBudget;
    row.rhs = budget;
    row.tag = "budget";
    for (int v = 0; v < model.num_selection_vars; ++v) {
      if (model.vars[v].words != 0.0) {
        row.terms.emplace_back(v, model.vars[v].words);
      }
    }
    model.rows.push_back(std::move(row));
  }

  for (auto [from, to] : graph.requires_arcs) {
    IlpRow row;
    row.kind = RowKind::kRequirement;
    row.rhs = 0.0;
    row.tag = "requires(u" + std::to_string(from) + ",u" + std::to_string(to) + ")";
    row.terms.emplace_back(unit_index(from), 1.0);
    row.terms.emplace_back(unit_index(to), -1.0);
    model.rows.push_back(std::move(row));
  }

  for (size_t c = 0; c < candidates.size(); ++c) {
    const ReplacementCandidate& cand = candidates[c];
    const int rv = model.num_units + static_cast<int>(c);
    const int uv = unit_index(cand.unit);
    {
      IlpRow row;
      row.kind = RowKind::kLinkage;
      row.rhs = 0.0;
      row.tag = "linkage(r" + std::to_string(c) + ",u" +
                std::to_string(cand.unit) + ")";
      row.terms.emplace_back(rv, 1.0);
      row.terms.emplace_back(uv, -1.0);
      model.rows.push_back(std::move(row));
    }
    for (int blocker : cand.blocker_units) {
      IlpRow row;
      row.kind = RowKind::kBlocking;
      row.rhs = 1.0;
      row.tag = "blocking(r" + std::to_string(c) + ",u" +
                std::to_string(blocker) + ")";
      row.terms.emplace_back(rv, 1.0);
      row.terms.emplace_back(unit_index(blocker), 1.0);
      model.rows.push_back(std::move(row));
    }
    // Earlier rewrites of the same entity make this one redundant, and the
    // forcing row must not fire when one of them is applied.
    std::vector<int> earlier_same_entity;
    for (size_t c2 = 0; c2 < c; ++c2) {
      if (candidates[c2].entity == cand.entity) {
        earlier_same_entity.push_back(model.num_units + static_cast<int>(c2));
        IlpRow row;
        row.kind = RowKind::kBlocking;
        row.rhs = 1.0;
        row.tag = "blocking(r" + std::to_string(c) + ",r" +
                  std::to_string(c2) + ")";
        row.terms.emplace_back(rv, 1.0);
        row.terms.emplace_back(model.num_units + static_cast<int>(c2), 1.0);
        model.rows.push_back(std::move(row));
      }
    }
    {
      IlpRow row;
      row.kind = RowKind::kForcing;
      row.rhs = 0.0;
      row.tag = "forcing(r" + std::to_string(c) + ")";
      row.terms.emplace_back(uv, 1.0);
      for (int blocker : cand.blocker_units) {
        row.terms.emplace_back(unit_index(blocker), -1.0);
      }
      for (int ev : earlier_same_entity) row.terms.emplace_back(ev, -1.0);
      row.terms.emplace_back(rv, -1.0);
      model.rows.push_back(std::move(row));
    }
  }

  for (const AntecedentConstraint& ac : constraints) {
    if (ac.in_unit_mass >= ac.beta) continue;  // satisfied by co-inclusion
    const int pv = unit_index(ac.pronoun_unit);
    if (ac.infeasible) {
      model.fix(pv, false);
      continue;
    }
    IlpRow row;
    row.kind = RowKind::kAntecedent;
    row.rhs = 0.0;
    row.tag = "antecedent(u" + std::to_string(ac.pronoun_unit) + ")";
    row.terms.emplace_back(pv, ac.beta);
    for (auto [unit_id, mass] : ac.unit_mass) {
      row.terms.emplace_back(unit_index(unit_id), -mass);
    }
    model.rows.push_back(std::move(row));
  }

  return model;
}

void add_loss_augmentation(IlpModel* model, const NgramStats& stats,
                           const NgramCoverage& coverage, double loss_weight) {
  if (stats.total == 0) return;
  const double total = static_cast<double>(stats.total);
  for (const auto& [key, count] : stats.entries) {
    const int g_index = static_cast<int>(model->ngram_keys.size());
    IlpVar var;
    var.kind = VarKind::kNgram;
    var.ref = g_index;
    var.objective = loss_weight * count / total;
    var.words = 0.0;
    const int gv = model->var_count();
    model->vars.push_back(var);
    model->ngram_keys.push_back(key);

    std::vector<int> covers;
    auto it = coverage.covers.find(key);
    if (it != coverage.covers.end()) {
      for (int unit_id : it->second.first) {
        auto uit = model->unit_var.find(unit_id);
        if (uit != model->unit_var.end()) covers.push_back(uit->second);
      }
      for (int cand_index : it->second.second) {
        const int rv = model->num_units + cand_index;
        if (rv < model->num_selection_vars) covers.push_back(rv);
      }
    }
    std::sort(covers.begin(), covers.end());
    covers.erase(std::unique(covers.begin(), covers.end()), covers.end());

    IlpRow upper;
    upper.kind = RowKind::kNgramLink;
    upper.rhs = 0.0;
    upper.tag = "ngram_upper(g" + std::to_string(g_index) + ")";
    upper.terms.emplace_back(gv, 1.0);
    for (int v : covers) upper.terms.emplace_back(v, -1.0);
    model->rows.push_back(std::move(upper));

    if (loss_weight < 0.0) {
      for (int v : covers) {
        IlpRow lower;
        lower.kind = RowKind::kNgramLink;
        lower.rhs = 0.0;
        lower.tag = "ngram_lower(g" + std::to_string(g_index) + "," +
                    row_term_name(*model, v) + ")";
        lower.terms.emplace_back(v, 1.0);
        lower.terms.emplace_back(gv, -1.0);
        model->rows.push_back(std::move(lower));
      }
    }
    model->ngram_covers.push_back(std::move(covers));
  }
}

namespace {

// Shared, order-fixed accounting used when a complete assignment is scored.
// Summation runs in ascending variable order so equal selections always
// produce bit-identical objectives.

std::vector<int8_t> ngram_values(const IlpModel& model,
                                 const std::vector<int8_t>& sel) {
  std::vector<int8_t> g(model.ngram_keys.size(), 0);
  for (size_t i = 0; i < model.ngram_covers.size(); ++i) {
    for (int v : model.ngram_covers[i]) {
      if (sel[v] == 1) {
        g[i] = 1;
        break;
      }
    }
  }
  return g;
}

Solution make_solution(const IlpModel& model, const std::vector<int8_t>& sel,
                       const std::vector<int8_t>& g, double objective) {
  Solution s;
  for (int v = 0; v < model.num_selection_vars; ++v) {
    if (sel[v] != 1) continue;
    if (model.vars[v].kind == VarKind::kUnit) {
      s.unit_ids.push_back(model.vars[v].ref);
    } else {
      s.replacement_indices.push_back(model.vars[v].ref);
    }
  }
  std::sort(s.unit_ids.begin(), s.unit_ids.end());
  std::sort(s.replacement_indices.begin(), s.replacement_indices.end());
  for (size_t i = 0; i < g.size(); ++i) {
    if (g[i]) s.active_ngrams.push_back(model.ngram_keys[i]);
  }
  s.objective = objective;
  s.proven_optimal = true;
  return s;
}

// ---- branch and bound ----

class BranchAndBound {
 public:
  explicit BranchAndBound(const IlpModel& model) : model_(model) {
    for (const IlpRow& row : model.rows) {
      bool selection_only = true;
      for (auto [v, c] : row.terms) {
        if (v >= model.num_selection_vars) {
          selection_only = false;
          break;
        }
      }
      if (selection_only) prop_rows_.push_back(&row);
    }
    ratio_order_.reserve(model.num_selection_vars);
    for (int v = 0; v < model.num_selection_vars; ++v) {
      if (model.vars[v].objective > 0.0) ratio_order_.push_back(v);
    }
    std::sort(ratio_order_.begin(), ratio_order_.end(), [&](int a, int b) {
      const IlpVar& va = model.vars[a];
      const IlpVar& vb = model.vars[b];
      const bool a_free = va.words <= 0.0;
      const bool b_free = vb.words <= 0.0;
      if (a_free != b_free) return a_free;
      if (a_free) return a < b;
      const double ra = va.objective / va.words;
      const double rb = vb.objective / vb.words;
      if (ra != rb) return ra > rb;
      return a < b;
    });
  }

  Solution run() {
    val_.assign(model_.num_selection_vars, -1);
    std::vector<int> trail;
    for (int v = 0; v < model_.num_selection_vars; ++v) {
      if (model_.fixed[v] >= 0) {
        val_[v] = model_.fixed[v];
        trail.push_back(v);
      }
    }
    if (propagate(&trail)) search(0);
    undo(trail, 0);
    if (!has_best_) {
      std::string detail = conflicts_.empty() ? "fixed assignments conflict"
                                              : "conflicting constraints:";
      for (const std::string& tag : conflicts_) detail += " " + tag;
      throw InfeasibleError("model has no feasible solution (" + detail + ")");
    }
    return make_solution(model_, best_val_, ngram_values(model_, best_val_),
                         best_obj_);
  }

 private:
  bool propagate(std::vector<int>* trail) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const IlpRow* row : prop_rows_) {
        double min_lhs = 0.0;
        for (auto [v, c] : row->terms) {
          if (val_[v] >= 0) {
            min_lhs += c * val_[v];
          } else if (c < 0.0) {
            min_lhs += c;
          }
        }
        if (min_lhs > row->rhs + kRowEps) {
          note_conflict(row->tag);
          return false;
        }
        for (auto [v, c] : row->terms) {
          if (val_[v] >= 0) continue;
          if (c > 0.0 && min_lhs + c > row->rhs + kRowEps) {
            val_[v] = 0;
            trail->push_back(v);
            changed = true;
          } else if (c < 0.0 && min_lhs - c > row->rhs + kRowEps) {
            val_[v] = 1;
            trail->push_back(v);
            changed = true;
          }
        }
      }
    }
    return true;
  }

  double bound() const {
    double obj = 0.0;
    double used = 0.0;
    for (int v = 0; v < model_.num_selection_vars; ++v) {
      if (val_[v] == 1) {
        obj += model_.vars[v].objective;
        used += model_.vars[v].words;
      }
    }
    double remaining = model_.budget - used;
    if (remaining < -kRowEps) return -1e300;
    for (int v : ratio_order_) {
      if (val_[v] >= 0) continue;
      const IlpVar& var = model_.vars[v];
      if (var.words <= 0.0) {
        obj += var.objective;
      } else if (var.words <= remaining) {
        obj += var.objective;
        remaining -= var.words;
      } else {
        if (remaining > 0.0) obj += var.objective * remaining / var.words;
        remaining = 0.0;
        break;
      }
    }
    for (size_t i = 0; i < model_.ngram_covers.size(); ++i) {
      const double gain =
          model_.vars[model_.num_selection_vars + static_cast<int>(i)]
              .objective;
      if (gain > 0.0) {
        for (int v : model_.ngram_covers[i]) {
          if (val_[v] != 0) {
            obj += gain;
            break;
          }
        }
      } else if (gain < 0.0) {
        for (int v : model_.ngram_covers[i]) {
          if (val_[v] == 1) {
            obj += gain;
            break;
          }
        }
      }
    }
    return obj;
  }

  void search(int from) {
    int branch_var = -1;
    for (int v = from; v < model_.num_selection_vars; ++v) {
      if (val_[v] < 0) {
        branch_var = v;
        break;
      }
    }
    if (branch_var < 0) {
      finish_leaf();
      return;
    }
    if (has_best_ && bound() <= best_obj_ + kPruneEps) return;
    for (int8_t value : {int8_t{0}, int8_t{1}}) {
      std::vector<int> trail;
      val_[branch_var] = value;
      trail.push_back(branch_var);
      if (propagate(&trail)) search(branch_var + 1);
      undo(trail, 0);
    }
  }

  void finish_leaf() {
    const std::vector<int8_t> g = ngram_values(model_, val_);
    double obj = 0.0;
    for (int v = 0; v < model_.num_selection_vars; ++v) {
      if (val_[v] == 1) obj += model_.vars[v].objective;
    }
    for (size_t i = 0; i < g.size(); ++i) {
      if (g[i]) {
        obj += model_.vars[model_.num_selection_vars + static_cast<int>(i)]
                   .objective;
      }
    }
    if (!has_best_ || obj > best_obj_) {
      has_best_ = true;
      best_obj_ = obj;
      best_val_ = val_;
    }
  }

  void undo(const std::vector<int>& trail, size_t from) {
    for (size_t i = from; i < trail.size(); ++i) val_[trail[i]] = -1;
  }

  void note_conflict(const std::string& tag) {
    if (conflicts_.size() < 4) conflicts_.insert(tag);
  }

  const IlpModel& model_;
  std::vector<const IlpRow*> prop_rows_;
  std::vector<int> ratio_order_;
  std::vector<int8_t> val_;
  std::vector<int8_t> best_val_;
  double best_obj_ = 0.0;
  bool has_best_ = false;
  std::set<std::string> conflicts_;
};

}  // namespace

Solution solve(const IlpModel& model) {
  BranchAndBound bb(model);
  return bb.run();
}

Solution brute_force_solve(const IlpModel& model) {
  const int n = model.num_selection_vars;
  if (n > 20) {
    throw ModelBuildError(
        "brute_force_solve refuses models with more than 20 selection "
        "variables (got " + std::to_string(n) + ")");
  }

  std::vector<int8_t> best_val;
  double best_obj = 0.0;
  bool has_best = false;

  std::vector<int8_t> val(n, 0);
  std::vector<int8_t> g;
  const uint32_t limit = 1u << n;
  for (uint32_t mask = 0; mask < limit; ++mask) {
    for (int v = 0; v < n; ++v) val[v] = (mask >> v) & 1u;

    bool ok = true;
    for (int v = 0; v < n && ok; ++v) {
      if (model.fixed[v] >= 0 && val[v] != model.fixed[v]) ok = false;
    }
    if (!ok) continue;

    g = ngram_values(model, val);
    auto value_of = [&](int v) -> double {
      return v < n ? val[v] : g[model.vars[v].ref];
    };
    for (const IlpRow& row : model.rows) {
      double lhs = 0.0;
      for (auto [v, c] : row.terms) lhs += c * value_of(v);
      if (lhs > row.rhs + kRowEps) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;

    double obj = 0.0;
    for (int v = 0; v < n; ++v) {
      if (val[v] == 1) obj += model.vars[v].objective;
    }
    for (size_t i = 0; i < g.size(); ++i) {
      if (g[i]) obj += model.vars[n + static_cast<int>(i)].objective;
    }

    bool take = false;
    if (!has_best || obj > best_obj) {
      take = true;
    } else if (obj == best_obj) {
      for (int v = 0; v < n; ++v) {
        if (val[v] != best_val[v]) {
          take = val[v] < best_val[v];
          break;
        }
      }
    }
    if (take) {
      has_best = true;
      best_obj = obj;
      best_val = val;
    }
  }

  if (!has_best) {
    throw InfeasibleError(
        "model has no feasible solution (exhaustive enumeration)");
  }
  return make_solution(model, best_val, ngram_values(model, best_val),
                       best_obj);
}

std::vector<std::string> validate_solution(const IlpModel& model,
                                           const Solution& solution) {
  std::vector<std::string> violations;
  std::vector<int8_t> val(model.num_selection_vars, 0);
  for (int unit_id : solution.unit_ids) {
    auto it = model.unit_var.find(unit_id);
    if (it == model.unit_var.end()) {
      violations.push_back("selected unknown unit id " +
                           std::to_string(unit_id));
      continue;
    }
    val[it->second] = 1;
  }
  for (int c : solution.replacement_indices) {
    const int rv = model.num_units + c;
    if (c < 0 || rv >= model.num_selection_vars) {
      violations.push_back("applied unknown replacement index " +
                           std::to_string(c));
      continue;
    }
    val[rv] = 1;
  }
  for (int v = 0; v < model.num_selection_vars; ++v) {
    if (model.fixed[v] >= 0 && val[v] != model.fixed[v]) {
      violations.push_back("fixed variable " + row_term_name(model, v) +
                           " has the wrong value");
    }
  }

  // Active n-gram set must be exactly the covered set.
  std::set<std::string> active(solution.active_ngrams.begin(),
                               solution.active_ngrams.end());
  std::vector<int8_t> g(model.ngram_keys.size(), 0);
  for (size_t i = 0; i < model.ngram_keys.size(); ++i) {
    bool covered = false;
    for (int v : model.ngram_covers[i]) covered = covered || val[v] == 1;
    const bool claimed = active.count(model.ngram_keys[i]) > 0;
    g[i] = claimed ? 1 : 0;
    if (claimed != covered) {
      violations.push_back("ngram '" + model.ngram_keys[i] +
                           (claimed ? "' active without a covering variable"
                                    : "' covered but not active"));
    }
  }

  auto value_of = [&](int v) -> double {
    return v < model.num_selection_vars ? val[v] : g[model.vars[v].ref];
  };
  for (const IlpRow& row : model.rows) {
    double lhs = 0.0;
    for (auto [v, c] : row.terms) lhs += c * value_of(v);
    if (lhs > row.rhs + kRowEps) {
      violations.push_back("violated " + row.tag);
    }
  }

  double obj = 0.0;
  for (int v = 0; v < model.var_count(); ++v) {
    obj += model.vars[v].objective * value_of(v);
  }
  if (std::abs(obj - solution.objective) > 1e-6 * (1.0 + std::abs(obj))) {
    violations.push_back("objective mismatch: recomputed " +
                         std::to_string(obj) + " vs reported " +
                         std::to_string(solution.objective));
  }
  return violations;
}

std::string to_lp_format(const IlpModel& model, const std::string& name) {
  std::ostringstream os;
  os << "\\ " << name << "\n";
  os << "Maximize\n obj:";
  bool first = true;
  for (int v = 0; v < model.var_count(); ++v) {
    const double c = model.vars[v].objective;
    if (c == 0.0) continue;
    os << (c < 0 ? " - " : (first ? " " : " + ")) << std::abs(c) << " "
       << row_term_name(model, v);
    first = false;
  }
  if (first) os << " 0 " << (model.var_count() ? row_term_name(model, 0) : "x");
  os << "\nSubject To\n";
  int rid = 0;
  for (const IlpRow& row : model.rows) {
    os << " c" << rid++ << ":";
    bool rf = true;
    for (auto [v, c] : row.terms) {
      os << (c < 0 ? " - " : (rf ? " " : " + ")) << std::abs(c) << " "
         << row_term_name(model, v);
      rf = false;
    }
    os << " <= " << row.rhs << "\n";
  }
  os << "Bounds\n";
  for (int v = 0; v < model.num_selection_vars; ++v) {
    if (model.fixed[v] >= 0) {
      os << " " << row_term_name(model, v) << " = "
         << static_cast<int>(model.fixed[v]) << "\n";
    }
  }
  os << "Binaries\n";
  for (int v = 0; v < model.var_count(); ++v) {
    os << " " << row_term_name(model, v);
  }
  os << "\nEnd\n";
  return os.str();
}

}  // namespace csumm
