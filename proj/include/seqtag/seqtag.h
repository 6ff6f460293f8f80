// Copyright 2026 The Seqtag Authors.
//
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

/* C interface to the seqtag library.
 *
 * All functions return a seqtag_status. On failure a message describing the
 * error is available from seqtag_last_error() on the calling thread until
 * the next failing call. Strings returned through char** out-parameters are
 * owned by the caller and released with seqtag_string_free().
 */
#ifndef SEQTAG_SEQTAG_H_
#define SEQTAG_SEQTAG_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SEQTAG_API __declspec(dllexport)
#else
#define SEQTAG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum seqtag_status {
  SEQTAG_OK = 0,
  SEQTAG_ERR_RUNTIME = 1,
  SEQTAG_ERR_CONFIG = 2,
  SEQTAG_ERR_PARSE = 3,
  SEQTAG_ERR_IO = 4,
  SEQTAG_ERR_NUMERIC = 5,
  SEQTAG_ERR_DIMENSION = 6,
  SEQTAG_ERR_DOMAIN = 7,
  SEQTAG_ERR_ARGUMENT = 8, /* null handle or pointer */
} seqtag_status;

/* Run options: hyperparameters, file paths and task settings. */
typedef struct seqtag_options seqtag_options;
/* A trained or loaded model together with its training configuration. */
typedef struct seqtag_model seqtag_model;

SEQTAG_API const char *seqtag_version(void);
SEQTAG_API const char *seqtag_last_error(void);
SEQTAG_API const char *seqtag_status_name(seqtag_status status);
SEQTAG_API void seqtag_string_free(char *s);

SEQTAG_API seqtag_status seqtag_options_create(seqtag_options **out);
SEQTAG_API void seqtag_options_destroy(seqtag_options *options);
/* Keys accept dashes or underscores, e.g. "source-prob" or "source_prob". */
SEQTAG_API seqtag_status seqtag_options_set(seqtag_options *options,
                                            const char *key,
                                            const char *value);
/* Reads a "key = value" file; '#' starts a comment line. */
SEQTAG_API seqtag_status seqtag_options_load(seqtag_options *options,
                                             const char *path);
/* Canonical "key = value" rendering of the hyperparameters. */
SEQTAG_API seqtag_status seqtag_options_config_text(
    const seqtag_options *options, char **out);

/* Trains a model. `log` (optional) receives one tab-separated line per
 * evaluation: step, task step counts, loss average, target dev score and
 * source dev score or '-'. */
SEQTAG_API seqtag_status seqtag_train(const seqtag_options *options,
                                      seqtag_model **out, char **log);
SEQTAG_API void seqtag_model_destroy(seqtag_model *model);
SEQTAG_API seqtag_status seqtag_model_save(const seqtag_model *model,
                                           const char *path);
SEQTAG_API seqtag_status seqtag_model_load(const char *path,
                                           seqtag_model **out);
/* "key<TAB>value" lines: architecture, task names, label counts, parameter
 * counts and, for freshly trained models, the best step. */
SEQTAG_API seqtag_status seqtag_model_info(const seqtag_model *model,
                                           char **out);

/* Scores the "test" file of `options`. `report` and `value` are optional. */
SEQTAG_API seqtag_status seqtag_evaluate(const seqtag_model *model,
                                         const seqtag_options *options,
                                         char **report, double *value);
/* Tags the "input" file of `options`; the annotated CoNLL text goes to
 * `out`. */
SEQTAG_API seqtag_status seqtag_predict(const seqtag_model *model,
                                        const seqtag_options *options,
                                        char **out);

/* Seeded 80/10/10 split. `sizes` (optional) receives train, dev, test. */
SEQTAG_API seqtag_status seqtag_split(const char *input, uint64_t seed,
                                      const char *train_out,
                                      const char *dev_out,
                                      const char *test_out, size_t sizes[3]);
/* Keeps round(rate * N) sentences; `kept` is optional. */
SEQTAG_API seqtag_status seqtag_subsample(const char *input, double rate,
                                          uint64_t seed, const char *output,
                                          size_t *kept);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* SEQTAG_SEQTAG_H_ */
