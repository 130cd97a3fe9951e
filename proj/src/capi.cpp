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

#include "csumm.h"

#include <memory>
#include <string>
#include <vector>

#include "csumm/pipeline.hpp"

// Opaque handle definitions. The C structs wrap the C++ core types; every
// entry point catches exceptions and maps them to status codes.

struct csumm_options {
  csumm::RunConfig config;
};

struct csumm_corpus {
  std::vector<csumm::Document> docs;
};

struct csumm_model {
  csumm::Model model;
};

namespace {

thread_local std::string g_last_error = "";

csumm_status fail(csumm_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

template <typename Fn>
csumm_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return CSUMM_OK;
  } catch (const csumm::VersionError& e) {
    return fail(CSUMM_EVERSION, e.what());
  } catch (const csumm::ParseError& e) {
    return fail(CSUMM_EINPUT, e.what());
  } catch (const csumm::ValidationError& e) {
    return fail(CSUMM_EINPUT, e.what());
  } catch (const csumm::ModelBuildError& e) {
    return fail(CSUMM_ERROR, e.what());
  } catch (const std::exception& e) {
    return fail(CSUMM_ERROR, e.what());
  } catch (...) {
    return fail(CSUMM_ERROR, "unknown error");
  }
}

const csumm::RunConfig& config_of(const csumm_options* options) {
  static const csumm::RunConfig defaults;
  return options ? options->config : defaults;
}

}  // namespace

extern "C" {

const char* csumm_version(void) { return "0.1.0"; }

const char* csumm_last_error(void) { return g_last_error.c_str(); }

csumm_options* csumm_options_new(void) { return new csumm_options(); }

void csumm_options_free(csumm_options* options) { delete options; }

csumm_status csumm_options_set(csumm_options* options, const char* key,
                               const char* value) {
  if (!options || !key || !value) {
    return fail(CSUMM_EINPUT, "null argument to csumm_options_set");
  }
  return guarded([&] { options->config.set(key, value); });
}

csumm_status csumm_options_load_file(csumm_options* options,
                                     const char* path) {
  if (!options || !path) {
    return fail(CSUMM_EINPUT, "null argument to csumm_options_load_file");
  }
  return guarded([&] { options->config.load_config_file(path); });
}

csumm_status csumm_corpus_open(const char* path, const csumm_options* options,
                               csumm_corpus** out) {
  if (!path || !out) {
    return fail(CSUMM_EINPUT, "null argument to csumm_corpus_open");
  }
  *out = nullptr;
  return guarded([&] {
    auto corpus = std::make_unique<csumm_corpus>();
    corpus->docs = csumm::load_corpus(path, config_of(options));
    *out = corpus.release();
  });
}

void csumm_corpus_free(csumm_corpus* corpus) { delete corpus; }

int csumm_corpus_size(const csumm_corpus* corpus) {
  return corpus ? static_cast<int>(corpus->docs.size()) : 0;
}

csumm_status csumm_prep(const char* corpus_path, const csumm_options* options,
                        const char* out_path, int* kept, int* dropped) {
  if (!corpus_path || !out_path) {
    return fail(CSUMM_EINPUT, "null argument to csumm_prep");
  }
  return guarded([&] {
    auto [k, d] = csumm::cmd_prep(corpus_path, out_path, config_of(options));
    if (kept) *kept = k;
    if (dropped) *dropped = d;
  });
}

csumm_status csumm_export_dot(const csumm_corpus* corpus,
                              const csumm_options* options,
                              const char* out_dir) {
  if (!corpus || !out_dir) {
    return fail(CSUMM_EINPUT, "null argument to csumm_export_dot");
  }
  return guarded(
      [&] { csumm::cmd_export_dot(corpus->docs, config_of(options), out_dir); });
}

csumm_status csumm_train(const csumm_corpus* corpus,
                         const csumm_options* options, const char* model_path,
                         const char* log_path) {
  if (!corpus || !model_path) {
    return fail(CSUMM_EINPUT, "null argument to csumm_train");
  }
  return guarded([&] {
    csumm::cmd_train(corpus->docs, config_of(options), model_path,
                     log_path ? log_path : "");
  });
}

csumm_status csumm_model_open(const char* path, csumm_model** out) {
  if (!path || !out) {
    return fail(CSUMM_EINPUT, "null argument to csumm_model_open");
  }
  *out = nullptr;
  return guarded([&] {
    auto model = std::make_unique<csumm_model>();
    model->model = csumm::load_model(path);
    *out = model.release();
  });
}

void csumm_model_free(csumm_model* model) { delete model; }

csumm_status csumm_summarize(const csumm_corpus* corpus,
                             const csumm_model* model,
                             const csumm_options* options,
                             const char* out_path) {
  if (!corpus || !model || !out_path) {
    return fail(CSUMM_EINPUT, "null argument to csumm_summarize");
  }
  return guarded([&] {
    csumm::cmd_summarize(corpus->docs, model->model, config_of(options),
                         out_path);
  });
}

csumm_status csumm_oracle(const csumm_corpus* corpus,
                          const csumm_options* options, const char* out_path,
                          const char* positions_path) {
  if (!corpus || !out_path) {
    return fail(CSUMM_EINPUT, "null argument to csumm_oracle");
  }
  return guarded([&] {
    csumm::cmd_oracle(corpus->docs, config_of(options), out_path,
                      positions_path ? positions_path : "");
  });
}

csumm_status csumm_baseline(const csumm_corpus* corpus, const char* kind,
                            const csumm_options* options,
                            const char* out_path) {
  if (!corpus || !kind || !out_path) {
    return fail(CSUMM_EINPUT, "null argument to csumm_baseline");
  }
  return guarded([&] {
    csumm::cmd_baseline(corpus->docs, kind, config_of(options), out_path);
  });
}

csumm_status csumm_evaluate(const csumm_corpus* corpus,
                            const char* summaries_path,
                            const csumm_options* options,
                            const char* report_json_path,
                            const char* report_table_path) {
  if (!corpus || !summaries_path || !report_json_path) {
    return fail(CSUMM_EINPUT, "null argument to csumm_evaluate");
  }
  return guarded([&] {
    csumm::cmd_evaluate(corpus->docs, summaries_path, config_of(options),
                        report_json_path,
                        report_table_path ? report_table_path : "");
  });
}

csumm_status csumm_export_ilp(const csumm_corpus* corpus,
                              const csumm_model* model,
                              const csumm_options* options,
                              const char* out_dir) {
  if (!corpus || !out_dir) {
    return fail(CSUMM_EINPUT, "null argument to csumm_export_ilp");
  }
  return guarded([&] {
    csumm::cmd_export_ilp(corpus->docs, model ? &model->model : nullptr,
                          config_of(options), out_dir);
  });
}

csumm_status csumm_export_rouge(const csumm_corpus* corpus,
                                const char* summaries_path,
                                const csumm_options* options,
                                const char* out_dir) {
  if (!corpus || !summaries_path || !out_dir) {
    return fail(CSUMM_EINPUT, "null argument to csumm_export_rouge");
  }
  return guarded([&] {
    csumm::cmd_export_rouge(corpus->docs, summaries_path, config_of(options),
                            out_dir);
  });
}

}  // extern "C"
