/* Copyright 2026 The csumm Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the csumm compressive summarization engine.
 *
 * All functions return csumm_status; handles are opaque and must be released
 * with the matching _free function. csumm_last_error() returns a
 * thread-local message describing the most recent failure.
 */

#ifndef CSUMM_H_
#define CSUMM_H_

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define CSUMM_API __declspec(dllexport)
#else
#define CSUMM_API __attribute__((visibility("default")))
#endif

typedef enum csumm_status {
  CSUMM_OK = 0,
  CSUMM_ERROR = 1,    /* internal error */
  CSUMM_EINPUT = 2,   /* unreadable/invalid input */
  CSUMM_EVERSION = 3, /* file format version mismatch */
} csumm_status;

typedef struct csumm_options csumm_options;
typedef struct csumm_corpus csumm_corpus;
typedef struct csumm_model csumm_model;

CSUMM_API const char* csumm_version(void);

/* Message for the most recent failure on this thread; never NULL. */
CSUMM_API const char* csumm_last_error(void);

/* ---- options ---- */

CSUMM_API csumm_options* csumm_options_new(void);
CSUMM_API void csumm_options_free(csumm_options* options);

/* Recognized keys: mode (sentence|edu|full), anaphora, alpha, beta,
 * step_size|eta, l1_strength|lambda, epochs, seed, budget_policy
 * (reference|fixed), budget_k, jobs, min_ref_words, max_edus, stem,
 * drop_stopwords, features_lexical, features_structural,
 * features_centrality, features_replacement, stopwords (path). */
CSUMM_API csumm_status csumm_options_set(csumm_options* options,
                                         const char* key, const char* value);

/* Applies every key of a JSON object config file. */
CSUMM_API csumm_status csumm_options_load_file(csumm_options* options,
                                               const char* path);

/* ---- corpus ---- */

CSUMM_API csumm_status csumm_corpus_open(const char* path,
                                         const csumm_options* options,
                                         csumm_corpus** out);
CSUMM_API void csumm_corpus_free(csumm_corpus* corpus);
CSUMM_API int csumm_corpus_size(const csumm_corpus* corpus);

/* Validate + filter (min_ref_words, max_edus) + rewrite as JSON-lines.
 * kept/dropped may be NULL. */
CSUMM_API csumm_status csumm_prep(const char* corpus_path,
                                  const csumm_options* options,
                                  const char* out_path, int* kept,
                                  int* dropped);

/* Unit/requirement DOT graphs, one file per document. */
CSUMM_API csumm_status csumm_export_dot(const csumm_corpus* corpus,
                                        const csumm_options* options,
                                        const char* out_dir);

/* ---- model ---- */

CSUMM_API csumm_status csumm_train(const csumm_corpus* corpus,
                                   const csumm_options* options,
                                   const char* model_path,
                                   const char* log_path);

CSUMM_API csumm_status csumm_model_open(const char* path, csumm_model** out);
CSUMM_API void csumm_model_free(csumm_model* model);

/* ---- decoding and evaluation ---- */

CSUMM_API csumm_status csumm_summarize(const csumm_corpus* corpus,
                                       const csumm_model* model,
                                       const csumm_options* options,
                                       const char* out_path);

/* positions_path may be NULL to skip the sentence-position histogram. */
CSUMM_API csumm_status csumm_oracle(const csumm_corpus* corpus,
                                    const csumm_options* options,
                                    const char* out_path,
                                    const char* positions_path);

/* kind: first-k | first-sent | bigram. */
CSUMM_API csumm_status csumm_baseline(const csumm_corpus* corpus,
                                      const char* kind,
                                      const csumm_options* options,
                                      const char* out_path);

/* report_table_path may be NULL. */
CSUMM_API csumm_status csumm_evaluate(const csumm_corpus* corpus,
                                      const char* summaries_path,
                                      const csumm_options* options,
                                      const char* report_json_path,
                                      const char* report_table_path);

/* model may be NULL for zero-weight exports. */
CSUMM_API csumm_status csumm_export_ilp(const csumm_corpus* corpus,
                                        const csumm_model* model,
                                        const csumm_options* options,
                                        const char* out_dir);

CSUMM_API csumm_status csumm_export_rouge(const csumm_corpus* corpus,
                                          const char* summaries_path,
                                          const csumm_options* options,
                                          const char* out_dir);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* CSUMM_H_ */
