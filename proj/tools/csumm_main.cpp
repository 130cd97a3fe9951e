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

// Command line front end; all work happens behind the shared-library C API.

#include <cstdio>
#include <cstdlib>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "csumm.h"

namespace {

struct OptionsHandle {
  csumm_options* ptr = csumm_options_new();
  ~OptionsHandle() { csumm_options_free(ptr); }
};

struct CorpusHandle {
  csumm_corpus* ptr = nullptr;
  ~CorpusHandle() { csumm_corpus_free(ptr); }
};

struct ModelHandle {
  csumm_model* ptr = nullptr;
  ~ModelHandle() { csumm_model_free(ptr); }
};

int exit_code(csumm_status status) {
  switch (status) {
    case CSUMM_OK: return 0;
    case CSUMM_ERROR: return 1;
    case CSUMM_EINPUT: return 2;
    case CSUMM_EVERSION: return 3;
  }
  return 1;
}

int bail(csumm_status status) {
  std::fprintf(stderr, "error: %s\n", csumm_last_error());
  return exit_code(status);
}

// Collects flag values as option key/value pairs; flags override any config
// file because they are applied afterwards.
struct FlagSet {
  std::map<std::string, std::string> values;
  std::string config_file;

  void add(CLI::App* app) {
    auto opt = [this, app](const char* flag, const char* key,
                           const char* help) {
      app->add_option_function<std::string>(
             flag,
             [this, key](const std::string& v) { values[key] = v; }, help)
          ->expected(1);
    };
    app->add_option("--config", config_file, "JSON config file (flags win)");
    opt("--mode", "mode", "unit mode: sentence|edu|full");
    opt("--anaphora", "anaphora", "anaphora constraints on|off");
    opt("--alpha", "alpha", "pronoun replacement threshold (default 0.8)");
    opt("--beta", "beta", "antecedent mass threshold (default 0.6)");
    opt("--eta", "step_size", "AdaGrad step size (default 0.1)");
    opt("--lambda", "l1_strength", "l1 strength (default 1e-8)");
    opt("--epochs", "epochs", "training epochs (default 10)");
    opt("--seed", "seed", "random seed (default 1)");
    opt("--budget-policy", "budget_policy", "reference|fixed");
    opt("--budget", "budget_k", "fixed word budget (implies fixed policy)");
    opt("--jobs", "jobs", "worker threads (env CSUMM_JOBS)");
    opt("--min-ref-words", "min_ref_words", "drop docs with shorter references");
    opt("--max-edus", "max_edus", "drop docs with at least this many EDUs");
    opt("--stem", "stem", "stem before scoring on|off");
    opt("--drop-stopwords", "drop_stopwords", "drop stopwords before scoring");
    opt("--features-lexical", "features_lexical", "lexical feature group");
    opt("--features-structural", "features_structural",
        "structural feature group");
    opt("--features-centrality", "features_centrality",
        "centrality feature group");
    opt("--features-replacement", "features_replacement",
        "replacement feature group");
    opt("--stopwords", "stopwords", "stopword list file override");
  }

  csumm_status apply(csumm_options* options) const {
    if (!config_file.empty()) {
      csumm_status st = csumm_options_load_file(options, config_file.c_str());
      if (st != CSUMM_OK) return st;
    }
    if (const char* jobs = std::getenv("CSUMM_JOBS")) {
      if (values.find("jobs") == values.end()) {
        csumm_status st = csumm_options_set(options, "jobs", jobs);
        if (st != CSUMM_OK) return st;
      }
    }
    for (const auto& [key, value] : values) {
      csumm_status st = csumm_options_set(options, key.c_str(), value.c_str());
      if (st != CSUMM_OK) return st;
    }
    if (values.count("budget_k") && !values.count("budget_policy")) {
      return csumm_options_set(options, "budget_policy", "fixed");
    }
    return CSUMM_OK;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"compressive single-document summarizer"};
  app.require_subcommand(1);

  std::string corpus_path, out_path, model_path, log_path, summaries_path;
  std::string positions_path, report_table, out_dir, baseline_kind, dot_dir;

  FlagSet flags;

  CLI::App* prep = app.add_subcommand("prep", "validate and filter a corpus");
  prep->add_option("--corpus", corpus_path, "input corpus")->required();
  prep->add_option("--out", out_path, "normalized JSON-lines output")
      ->required();
  prep->add_option("--export-dot", dot_dir, "write unit/arc DOT graphs here");
  flags.add(prep);

  CLI::App* train = app.add_subcommand("train", "train a model");
  train->add_option("--corpus", corpus_path, "training corpus")->required();
  train->add_option("--model", model_path, "model output path")->required();
  train->add_option("--log", log_path, "per-epoch training log");
  flags.add(train);

  CLI::App* summarize = app.add_subcommand("summarize", "decode summaries");
  summarize->add_option("--corpus", corpus_path, "corpus")->required();
  summarize->add_option("--model", model_path, "model file")->required();
  summarize->add_option("--out", out_path, "summaries JSON-lines")->required();
  flags.add(summarize);

  CLI::App* oracle = app.add_subcommand("oracle", "reference-aware oracle decode");
  oracle->add_option("--corpus", corpus_path, "corpus")->required();
  oracle->add_option("--out", out_path, "summaries JSON-lines")->required();
  oracle->add_option("--positions", positions_path,
                     "also write a sentence-position histogram");
  flags.add(oracle);

  CLI::App* baseline = app.add_subcommand("baseline", "run a baseline");
  baseline->add_option("kind", baseline_kind, "first-k|first-sent|bigram")
      ->required();
  baseline->add_option("--corpus", corpus_path, "corpus")->required();
  baseline->add_option("--out", out_path, "summaries JSON-lines")->required();
  flags.add(baseline);

  CLI::App* evaluate = app.add_subcommand("evaluate", "score summaries");
  evaluate->add_option("--corpus", corpus_path, "corpus")->required();
  evaluate->add_option("--summaries", summaries_path, "summaries file")
      ->required();
  evaluate->add_option("--report", out_path, "report JSON")->required();
  evaluate->add_option("--table", report_table, "aligned text table");
  flags.add(evaluate);

  CLI::App* export_ilp = app.add_subcommand("export-ilp", "write LP files");
  export_ilp->add_option("--corpus", corpus_path, "corpus")->required();
  export_ilp->add_option("--model", model_path, "optional model file");
  export_ilp->add_option("--out", out_dir, "output directory")->required();
  flags.add(export_ilp);

  CLI::App* export_rouge =
      app.add_subcommand("export-rouge", "write plain text for external scoring");
  export_rouge->add_option("--corpus", corpus_path, "corpus")->required();
  export_rouge->add_option("--summaries", summaries_path, "summaries file")
      ->required();
  export_rouge->add_option("--out", out_dir, "output directory")->required();
  flags.add(export_rouge);

  CLI11_PARSE(app, argc, argv);

  OptionsHandle options;
  if (csumm_status st = flags.apply(options.ptr); st != CSUMM_OK) {
    return bail(st);
  }

  auto open_corpus = [&](CorpusHandle* corpus) {
    return csumm_corpus_open(corpus_path.c_str(), options.ptr, &corpus->ptr);
  };

  if (prep->parsed()) {
    int kept = 0, dropped = 0;
    csumm_status st = csumm_prep(corpus_path.c_str(), options.ptr,
                                 out_path.c_str(), &kept, &dropped);
    if (st != CSUMM_OK) return bail(st);
    std::printf("kept %d dropped %d -> %s\n", kept, dropped, out_path.c_str());
    if (!dot_dir.empty()) {
      CorpusHandle corpus;
      st = csumm_corpus_open(out_path.c_str(), options.ptr, &corpus.ptr);
      if (st != CSUMM_OK) return bail(st);
      st = csumm_export_dot(corpus.ptr, options.ptr, dot_dir.c_str());
      if (st != CSUMM_OK) return bail(st);
    }
    return 0;
  }

  if (train->parsed()) {
    CorpusHandle corpus;
    if (csumm_status st = open_corpus(&corpus); st != CSUMM_OK) return bail(st);
    csumm_status st =
        csumm_train(corpus.ptr, options.ptr, model_path.c_str(),
                    log_path.empty() ? nullptr : log_path.c_str());
    if (st != CSUMM_OK) return bail(st);
    std::printf("trained on %d documents -> %s\n",
                csumm_corpus_size(corpus.ptr), model_path.c_str());
    return 0;
  }

  if (summarize->parsed()) {
    CorpusHandle corpus;
    if (csumm_status st = open_corpus(&corpus); st != CSUMM_OK) return bail(st);
    ModelHandle model;
    if (csumm_status st = csumm_model_open(model_path.c_str(), &model.ptr);
        st != CSUMM_OK) {
      return bail(st);
    }
    csumm_status st =
        csumm_summarize(corpus.ptr, model.ptr, options.ptr, out_path.c_str());
    if (st != CSUMM_OK) return bail(st);
    std::printf("wrote %s\n", out_path.c_str());
    return 0;
  }

  if (oracle->parsed()) {
    CorpusHandle corpus;
    if (csumm_status st = open_corpus(&corpus); st != CSUMM_OK) return bail(st);
    csumm_status st = csumm_oracle(
        corpus.ptr, options.ptr, out_path.c_str(),
        positions_path.empty() ? nullptr : positions_path.c_str());
    if (st != CSUMM_OK) return bail(st);
    std::printf("wrote %s\n", out_path.c_str());
    return 0;
  }

  if (baseline->parsed()) {
    CorpusHandle corpus;
    if (csumm_status st = open_corpus(&corpus); st != CSUMM_OK) return bail(st);
    csumm_status st = csumm_baseline(corpus.ptr, baseline_kind.c_str(),
                                     options.ptr, out_path.c_str());
    if (st != CSUMM_OK) return bail(st);
    std::printf("wrote %s\n", out_path.c_str());
    return 0;
  }

  if (evaluate->parsed()) {
    CorpusHandle corpus;
    if (csumm_status st = open_corpus(&corpus); st != CSUMM_OK) return bail(st);
    csumm_status st = csumm_evaluate(
        corpus.ptr, summaries_path.c_str(), options.ptr, out_path.c_str(),
        report_table.empty() ? nullptr : report_table.c_str());
    if (st != CSUMM_OK) return bail(st);
    std::printf("wrote %s\n", out_path.c_str());
    return 0;
  }

  if (export_ilp->parsed()) {
    CorpusHandle corpus;
    if (csumm_status st = open_corpus(&corpus); st != CSUMM_OK) return bail(st);
    ModelHandle model;
    if (!model_path.empty()) {
      if (csumm_status st = csumm_model_open(model_path.c_str(), &model.ptr);
          st != CSUMM_OK) {
        return bail(st);
      }
    }
    csumm_status st =
        csumm_export_ilp(corpus.ptr, model.ptr, options.ptr, out_dir.c_str());
    if (st != CSUMM_OK) return bail(st);
    std::printf("wrote LP files to %s\n", out_dir.c_str());
    return 0;
  }

  if (export_rouge->parsed()) {
    CorpusHandle corpus;
    if (csumm_status st = open_corpus(&corpus); st != CSUMM_OK) return bail(st);
    csumm_status st = csumm_export_rouge(corpus.ptr, summaries_path.c_str(),
                                         options.ptr, out_dir.c_str());
    if (st != CSUMM_OK) return bail(st);
    std::printf("wrote ROUGE export to %s\n", out_dir.c_str());
    return 0;
  }

  return 1;
}
