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

#include "csumm/pipeline.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace csumm {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

bool parse_bool(const std::string& value, const std::string& key) {
  if (value == "1" || value == "true" || value == "on" || value == "yes") {
    return true;
  }
  if (value == "0" || value == "false" || value == "off" || value == "no") {
    return false;
  }
  throw ValidationError("expected boolean for option '" + key + "', got '" +
                        value + "'");
}

double parse_double(const std::string& value, const std::string& key) {
  try {
    size_t used = 0;
    double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("expected number for option '" + key + "', got '" +
                          value + "'");
  }
}

long parse_long(const std::string& value, const std::string& key) {
  try {
    size_t used = 0;
    long v = std::stol(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("expected integer for option '" + key + "', got '" +
                          value + "'");
  }
}

const char* mode_name(UnitMode mode) {
  switch (mode) {
    case UnitMode::kSentence: return "sentence";
    case UnitMode::kEdu: return "edu";
    case UnitMode::kFull: return "full";
  }
  return "full";
}

// Runs fn(i) for i in [0, n) on `jobs` threads, preserving index identity.
void parallel_for(int n, int jobs, const std::function<void(int)>& fn) {
  if (jobs <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> threads;
  std::atomic<bool> failed{false};
  std::string error;
  std::mutex error_mutex;
  const int workers = std::min(jobs, n);
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= n || failed.load()) return;
        try {
          fn(i);
        } catch (const std::exception& e) {
          std::lock_guard<std::mutex> lock(error_mutex);
          failed.store(true);
          if (error.empty()) error = e.what();
          return;
        }
      }
    });
  }
  for (std::thread& t : threads) t.join();
  if (failed.load()) throw ValidationError(error);
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& value) {
  if (key == "mode") {
    if (value == "sentence") mode = UnitMode::kSentence;
    else if (value == "edu") mode = UnitMode::kEdu;
    else if (value == "full") mode = UnitMode::kFull;
    else throw ValidationError("unknown mode '" + value + "'");
  } else if (key == "anaphora") {
    anaphora = parse_bool(value, key);
  } else if (key == "alpha") {
    alpha = parse_double(value, key);
    if (!(alpha > 0.5 && alpha <= 1.0)) {
      throw ValidationError("alpha must lie in (0.5, 1]");
    }
  } else if (key == "beta") {
    beta = parse_double(value, key);
    if (!(beta > 0.0 && beta <= 1.0)) {
      throw ValidationError("beta must lie in (0, 1]");
    }
  } else if (key == "step_size" || key == "eta") {
    step_size = parse_double(value, key);
  } else if (key == "l1_strength" || key == "lambda") {
    l1_strength = parse_double(value, key);
  } else if (key == "epochs") {
    epochs = static_cast<int>(parse_long(value, key));
    if (epochs < 0) throw ValidationError("epochs must be >= 0");
  } else if (key == "seed") {
    seed = static_cast<uint64_t>(parse_long(value, key));
  } else if (key == "budget_policy") {
    if (value == "reference") budget_policy = BudgetPolicy::kReferenceLength;
    else if (value == "fixed") budget_policy = BudgetPolicy::kFixed;
    else throw ValidationError("unknown budget policy '" + value + "'");
  } else if (key == "budget_k") {
    budget_k = static_cast<int>(parse_long(value, key));
    if (budget_k < 0) throw ValidationError("budget_k must be >= 0");
  } else if (key == "jobs") {
    jobs = static_cast<int>(parse_long(value, key));
    if (jobs < 1) throw ValidationError("jobs must be >= 1");
  } else if (key == "min_ref_words") {
    min_ref_words = static_cast<int>(parse_long(value, key));
  } else if (key == "max_edus") {
    max_edus = static_cast<int>(parse_long(value, key));
  } else if (key == "stem") {
    stem = parse_bool(value, key);
  } else if (key == "drop_stopwords") {
    drop_stopwords = parse_bool(value, key);
  } else if (key == "features_lexical") {
    groups.lexical = parse_bool(value, key);
  } else if (key == "features_structural") {
    groups.structural = parse_bool(value, key);
  } else if (key == "features_centrality") {
    groups.centrality = parse_bool(value, key);
  } else if (key == "features_replacement") {
    groups.replacement = parse_bool(value, key);
  } else if (key == "stopwords") {
    stopwords_path = value;
  } else {
    throw ValidationError("unknown option '" + key + "'");
  }
}

void RunConfig::load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file: " + path);
  json root;
  try {
    in >> root;
  } catch (const json::exception& e) {
    throw ParseError(path + ": invalid JSON: " + e.what());
  }
  if (!root.is_object()) throw ParseError(path + ": expected a JSON object");
  for (const auto& [key, value] : root.items()) {
    if (value.is_string()) {
      set(key, value.get<std::string>());
    } else {
      set(key, value.dump());
    }
  }
}

TrainOptions RunConfig::train_options() const {
  TrainOptions options;
  options.mode = mode;
  options.anaphora = anaphora;
  options.alpha = alpha;
  options.beta = beta;
  options.step_size = step_size;
  options.l1_strength = l1_strength;
  options.epochs = epochs;
  options.seed = seed;
  options.groups = groups;
  return options;
}

const StopwordList& RunConfig::stopwords() const {
  if (stopwords_path.empty()) return StopwordList::builtin();
  static std::map<std::string, StopwordList> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(stopwords_path);
  if (it == cache.end()) {
    it = cache.emplace(stopwords_path, StopwordList::from_file(stopwords_path))
             .first;
  }
  return it->second;
}

std::vector<Document> load_corpus(const std::string& path,
                                  const RunConfig& config) {
  return load_corpus_file(path, config.stopwords());
}

int budget_for(const Document& doc, const RunConfig& config) {
  return config.budget_policy == BudgetPolicy::kFixed
             ? config.budget_k
             : doc.reference.word_count;
}

std::pair<int, int> cmd_prep(const std::string& corpus_path,
                             const std::string& out_path,
                             const RunConfig& config) {
  std::vector<Document> docs = load_corpus(corpus_path, config);
  std::vector<Document> kept;
  for (Document& doc : docs) {
    if (doc.reference.word_count < config.min_ref_words) continue;
    if (config.max_edus > 0) {
      int edus = 0;
      for (const Sentence& s : doc.sentences) {
        edus += static_cast<int>(s.edus.size());
      }
      if (edus >= config.max_edus) continue;
    }
    kept.push_back(std::move(doc));
  }
  write_corpus_file(kept, out_path);
  return {static_cast<int>(kept.size()),
          static_cast<int>(docs.size() - kept.size())};
}

void cmd_export_dot(const std::vector<Document>& docs, const RunConfig& config,
                    const std::string& out_dir) {
  fs::create_directories(out_dir);
  for (const Document& doc : docs) {
    UnitDerivation derivation = build_textual_units(doc, config.mode);
    std::ofstream out(fs::path(out_dir) / (doc.id + ".dot"));
    if (!out) throw ParseError("cannot write DOT file for " + doc.id);
    out << to_dot(doc, derivation);
  }
}

void cmd_train(const std::vector<Document>& docs, const RunConfig& config,
               const std::string& model_path, const std::string& log_path) {
  TrainResult result = train(docs, config.train_options());
  save_model(result.model, model_path);
  if (!log_path.empty()) {
    std::ofstream log(log_path);
    if (!log) throw ParseError("cannot write training log: " + log_path);
    log << "epoch\tmean_hinge\tseconds\n";
    for (const EpochLog& e : result.epochs) {
      log << e.epoch << "\t" << e.mean_hinge << "\t" << e.seconds << "\n";
    }
    if (result.skipped_documents > 0) {
      log << "# skipped_documents\t" << result.skipped_documents << "\n";
    }
  }
}

std::vector<SummaryRecord> summarize_documents(
    const std::vector<Document>& docs, const Model& model,
    const RunConfig& config) {
  std::vector<SummaryRecord> records(docs.size());
  Vocabulary vocab = model.vocab;  // frozen; shared read-only per worker copy
  TrainOptions options = config.train_options();
  parallel_for(static_cast<int>(docs.size()), config.jobs, [&](int i) {
    const Document& doc = docs[i];
    Vocabulary local = vocab;
    PreparedDocument prep = prepare_document(doc, options, local);
    prep.budget = budget_for(doc, config);
    Solution solution = decode(prep, model.weights);
    SummaryRecord rec;
    rec.id = doc.id;
    rec.unit_ids = solution.unit_ids;
    std::vector<ReplacementCandidate> applied;
    for (int c : solution.replacement_indices) {
      const ReplacementCandidate& cand = prep.candidates[c];
      rec.replacements.emplace_back(cand.unit, cand.ordinal);
      applied.push_back(cand);
    }
    rec.tokens = render_summary_tokens(doc, prep.derivation.units,
                                       solution.unit_ids, applied);
    rec.objective = solution.objective;
    rec.budget = prep.budget;
    records[i] = std::move(rec);
  });
  return records;
}

namespace {

void write_summary_file(const std::string& kind,
                        const std::vector<SummaryRecord>& records,
                        const RunConfig& config, const std::string& out_path) {
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw ParseError("cannot write summaries file: " + out_path);
  json header;
  header["format_version"] = 1;
  header["kind"] = kind;
  header["mode"] = mode_name(config.mode);
  header["alpha"] = config.alpha;
  header["beta"] = config.beta;
  header["anaphora"] = config.anaphora;
  out << header.dump() << "\n";
  for (const SummaryRecord& rec : records) {
    json rj;
    rj["id"] = rec.id;
    rj["selected_units"] = rec.unit_ids;
    json repls = json::array();
    for (auto [unit, ordinal] : rec.replacements) {
      repls.push_back(json::array({unit, ordinal}));
    }
    rj["replacements"] = std::move(repls);
    json toks = json::array();
    for (const Token& t : rec.tokens) toks.push_back(t.text);
    rj["tokens"] = std::move(toks);
    rj["objective"] = rec.objective;
    rj["budget"] = rec.budget;
    rj["words"] = rec.tokens.size();
    out << rj.dump() << "\n";
  }
}

}  // namespace

void cmd_summarize(const std::vector<Document>& docs, const Model& model,
                   const RunConfig& config, const std::string& out_path) {
  write_summary_file("system", summarize_documents(docs, model, config),
                     config, out_path);
}

void cmd_oracle(const std::vector<Document>& docs, const RunConfig& config,
                const std::string& out_path,
                const std::string& positions_path) {
  std::vector<SummaryRecord> records(docs.size());
  TrainOptions options = config.train_options();
  parallel_for(static_cast<int>(docs.size()), config.jobs, [&](int i) {
    const Document& doc = docs[i];
    Vocabulary scratch;
    scratch.freeze();
    PreparedDocument prep = prepare_document(doc, options, scratch);
    prep.budget = budget_for(doc, config);
    Solution solution = oracle_decode(prep);
    SummaryRecord rec;
    rec.id = doc.id;
    rec.unit_ids = solution.unit_ids;
    std::vector<ReplacementCandidate> applied;
    for (int c : solution.replacement_indices) {
      const ReplacementCandidate& cand = prep.candidates[c];
      rec.replacements.emplace_back(cand.unit, cand.ordinal);
      applied.push_back(cand);
    }
    rec.tokens = render_summary_tokens(doc, prep.derivation.units,
                                       solution.unit_ids, applied);
    rec.objective = solution.objective;
    rec.budget = prep.budget;
    records[i] = std::move(rec);
  });
  write_summary_file("oracle", records, config, out_path);

  if (!positions_path.empty()) {
    PositionHistogram hist = oracle_sentence_positions(docs);
    json root;
    root["oracle_counts"] = hist.oracle_counts;
    root["prefix_counts"] = hist.prefix_counts;
    std::ofstream out(positions_path);
    if (!out) throw ParseError("cannot write positions file");
    out << root.dump(2) << "\n";
  }
}

void cmd_baseline(const std::vector<Document>& docs, const std::string& kind,
                  const RunConfig& config, const std::string& out_path) {
  std::vector<SummaryRecord> records(docs.size());
  parallel_for(static_cast<int>(docs.size()), config.jobs, [&](int i) {
    const Document& doc = docs[i];
    const int budget = budget_for(doc, config);
    SummaryRecord rec;
    rec.id = doc.id;
    rec.budget = budget;
    if (kind == "first-k") {
      rec.tokens = baseline_first_k(doc, budget, false);
    } else if (kind == "first-sent") {
      rec.tokens = baseline_first_k(doc, budget, true);
    } else if (kind == "bigram") {
      rec.tokens = baseline_bigram_coverage(doc, budget);
    } else {
      throw ValidationError("unknown baseline '" + kind + "'");
    }
    records[i] = std::move(rec);
  });
  write_summary_file("baseline-" + kind, records, config, out_path);
}

SummaryFile read_summaries(const std::string& path, const RunConfig& config) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open summaries file: " + path);
  SummaryFile file;
  file.config = config;
  std::string line;
  bool have_header = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json row;
    try {
      row = json::parse(line);
    } catch (const json::exception& e) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    if (!have_header) {
      if (!row.contains("format_version") ||
          row["format_version"].get<int>() != 1) {
        throw VersionError("unsupported summaries format version in " + path);
      }
      file.kind = row.value("kind", "system");
      file.config.set("mode", row.value("mode", "full"));
      file.config.alpha = row.value("alpha", config.alpha);
      file.config.beta = row.value("beta", config.beta);
      file.config.anaphora = row.value("anaphora", config.anaphora);
      have_header = true;
      continue;
    }
    SummaryRecord rec;
    rec.id = row.at("id").get<std::string>();
    rec.unit_ids = row.at("selected_units").get<std::vector<int>>();
    for (const json& pair : row.at("replacements")) {
      rec.replacements.emplace_back(pair.at(0).get<int>(),
                                    pair.at(1).get<int>());
    }
    const StopwordList& stop = config.stopwords();
    for (const json& text : row.at("tokens")) {
      Token t;
      t.text = text.get<std::string>();
      t.is_stopword = stop.contains(t.text);
      rec.tokens.push_back(std::move(t));
    }
    rec.objective = row.value("objective", 0.0);
    rec.budget = row.at("budget").get<int>();
    file.records.push_back(std::move(rec));
  }
  if (!have_header) throw ParseError("summaries file has no header: " + path);
  return file;
}

EvalReport cmd_evaluate(const std::vector<Document>& docs,
                        const std::string& summaries_path,
                        const RunConfig& config,
                        const std::string& report_json_path,
                        const std::string& report_table_path) {
  SummaryFile file = read_summaries(summaries_path, config);
  if (file.records.size() != docs.size()) {
    throw ValidationError("summaries file has " +
                          std::to_string(file.records.size()) +
                          " records for " + std::to_string(docs.size()) +
                          " documents");
  }
  OrphanCheckConfig check;
  check.mode = file.config.mode;
  check.alpha = file.config.alpha;
  check.beta = file.config.beta;
  RougeOptions rouge{config.stem, config.drop_stopwords};
  EvalReport report = evaluate(docs, file.records, check, rouge);
  if (!report_json_path.empty()) {
    std::ofstream out(report_json_path);
    if (!out) throw ParseError("cannot write report: " + report_json_path);
    out << report_to_json(report) << "\n";
  }
  if (!report_table_path.empty()) {
    std::ofstream out(report_table_path);
    if (!out) throw ParseError("cannot write report: " + report_table_path);
    out << report_to_table(report);
  }
  return report;
}

void cmd_export_ilp(const std::vector<Document>& docs, const Model* model,
                    const RunConfig& config, const std::string& out_dir) {
  fs::create_directories(out_dir);
  TrainOptions options = config.train_options();
  for (const Document& doc : docs) {
    Vocabulary scratch;
    PreparedDocument prep;
    if (model != nullptr) {
      Vocabulary vocab = model->vocab;
      prep = prepare_document(doc, options, vocab);
    } else {
      scratch.freeze();
      prep = prepare_document(doc, options, scratch);
    }
    prep.budget = budget_for(doc, config);
    std::vector<double> unit_scores(prep.derivation.units.size(), 0.0);
    std::vector<double> repl_scores(prep.candidates.size(), 0.0);
    if (model != nullptr) {
      for (size_t i = 0; i < prep.unit_features.size(); ++i) {
        unit_scores[i] = prep.unit_features[i].dot(model->weights);
      }
      for (size_t i = 0; i < prep.repl_features.size(); ++i) {
        repl_scores[i] = prep.repl_features[i].dot(model->weights);
      }
    }
    IlpModel ilp = build_model(prep.derivation.units, prep.derivation.graph,
                               prep.candidates, prep.constraints, unit_scores,
                               repl_scores, prep.budget);
    std::ofstream out(fs::path(out_dir) / (doc.id + ".lp"));
    if (!out) throw ParseError("cannot write LP file for " + doc.id);
    out << to_lp_format(ilp, doc.id);
  }
}

void cmd_export_rouge(const std::vector<Document>& docs,
                      const std::string& summaries_path,
                      const RunConfig& config, const std::string& out_dir) {
  SummaryFile file = read_summaries(summaries_path, config);
  if (file.records.size() != docs.size()) {
    throw ValidationError("summaries/documents count mismatch");
  }
  fs::create_directories(fs::path(out_dir) / "system");
  fs::create_directories(fs::path(out_dir) / "reference");
  for (size_t i = 0; i < docs.size(); ++i) {
    std::ofstream sys(fs::path(out_dir) / "system" / (docs[i].id + ".txt"));
    for (size_t t = 0; t < file.records[i].tokens.size(); ++t) {
      sys << (t ? " " : "") << file.records[i].tokens[t].text;
    }
    sys << "\n";
    std::ofstream ref(fs::path(out_dir) / "reference" / (docs[i].id + ".txt"));
    for (size_t t = 0; t < docs[i].reference.tokens.size(); ++t) {
      ref << (t ? " " : "") << docs[i].reference.tokens[t].text;
    }
    ref << "\n";
  }
}

}  // namespace csumm
