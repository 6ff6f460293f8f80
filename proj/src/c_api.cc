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

#include "seqtag/seqtag.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "seqtag/checkpoint.h"
#include "seqtag/error.h"
#include "seqtag/pipeline.h"

struct seqtag_options {
  seqtag::RunOptions options;
};

struct seqtag_model {
  std::unique_ptr<seqtag::JointModel> model;
  seqtag::TrainConfig config;
  std::optional<seqtag::TrainResult> result;
};

namespace {

thread_local std::string last_error;

seqtag_status StatusOf(seqtag::ErrorKind kind) {
  switch (kind) {
    case seqtag::ErrorKind::kConfig:
      return SEQTAG_ERR_CONFIG;
    case seqtag::ErrorKind::kParse:
      return SEQTAG_ERR_PARSE;
    case seqtag::ErrorKind::kIo:
      return SEQTAG_ERR_IO;
    case seqtag::ErrorKind::kNumeric:
      return SEQTAG_ERR_NUMERIC;
    case seqtag::ErrorKind::kDimension:
      return SEQTAG_ERR_DIMENSION;
    case seqtag::ErrorKind::kDomain:
      return SEQTAG_ERR_DOMAIN;
  }
  return SEQTAG_ERR_RUNTIME;
}

seqtag_status Fail(seqtag_status status, const std::string &message) {
  last_error = message;
  return status;
}

template <typename F>
seqtag_status Guard(F &&body) {
  try {
    body();
    return SEQTAG_OK;
  } catch (const seqtag::Error &e) {
    return Fail(StatusOf(e.kind()), e.what());
  } catch (const std::bad_alloc &) {
    return Fail(SEQTAG_ERR_RUNTIME, "out of memory");
  } catch (const std::exception &e) {
    return Fail(SEQTAG_ERR_RUNTIME, e.what());
  }
}

char *Dup(const std::string &s) {
  char *out = static_cast<char *>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Eval and predict must tokenize exactly as training did.
seqtag::RunOptions WithModelConfig(const seqtag_options *o,
                                   const seqtag_model *m) {
  seqtag::RunOptions run = o->options;
  run.config = m->config;
  return run;
}

#define SEQTAG_REQUIRE(ptr)                                        \
  do {                                                             \
    if ((ptr) == nullptr) {                                        \
      return Fail(SEQTAG_ERR_ARGUMENT, #ptr " must not be null");  \
    }                                                              \
  } while (0)

}  // namespace

extern "C" {

const char *seqtag_version(void) { return "0.1.0"; }

const char *seqtag_last_error(void) { return last_error.c_str(); }

const char *seqtag_status_name(seqtag_status status) {
  switch (status) {
    case SEQTAG_OK:
      return "ok";
    case SEQTAG_ERR_RUNTIME:
      return "runtime error";
    case SEQTAG_ERR_CONFIG:
      return "configuration error";
    case SEQTAG_ERR_PARSE:
      return "parse error";
    case SEQTAG_ERR_IO:
      return "i/o error";
    case SEQTAG_ERR_NUMERIC:
      return "numeric error";
    case SEQTAG_ERR_DIMENSION:
      return "dimension error";
    case SEQTAG_ERR_DOMAIN:
      return "domain error";
    case SEQTAG_ERR_ARGUMENT:
      return "invalid argument";
  }
  return "unknown status";
}

void seqtag_string_free(char *s) { std::free(s); }

seqtag_status seqtag_options_create(seqtag_options **out) {
  SEQTAG_REQUIRE(out);
  return Guard([&] { *out = new seqtag_options(); });
}

void seqtag_options_destroy(seqtag_options *options) { delete options; }

seqtag_status seqtag_options_set(seqtag_options *options, const char *key,
                                 const char *value) {
  SEQTAG_REQUIRE(options);
  SEQTAG_REQUIRE(key);
  SEQTAG_REQUIRE(value);
  return Guard([&] { seqtag::SetOption(&options->options, key, value); });
}

seqtag_status seqtag_options_load(seqtag_options *options, const char *path) {
  SEQTAG_REQUIRE(options);
  SEQTAG_REQUIRE(path);
  return Guard([&] { seqtag::LoadOptionsFile(&options->options, path); });
}

seqtag_status seqtag_options_config_text(const seqtag_options *options,
                                         char **out) {
  SEQTAG_REQUIRE(options);
  SEQTAG_REQUIRE(out);
  return Guard(
      [&] { *out = Dup(seqtag::ConfigToText(options->options.config)); });
}

seqtag_status seqtag_train(const seqtag_options *options, seqtag_model **out,
                           char **log) {
  SEQTAG_REQUIRE(options);
  SEQTAG_REQUIRE(out);
  return Guard([&] {
    seqtag::TrainOutcome outcome = seqtag::RunTraining(options->options);
    auto model = std::make_unique<seqtag_model>();
    model->model = std::move(outcome.model);
    model->config = outcome.config;
    model->result = std::move(outcome.result);
    if (log != nullptr) *log = Dup(outcome.log);
    *out = model.release();
  });
}

void seqtag_model_destroy(seqtag_model *model) { delete model; }

seqtag_status seqtag_model_save(const seqtag_model *model, const char *path) {
  SEQTAG_REQUIRE(model);
  SEQTAG_REQUIRE(path);
  return Guard(
      [&] { seqtag::SaveCheckpointFile(*model->model, model->config, path); });
}

seqtag_status seqtag_model_load(const char *path, seqtag_model **out) {
  SEQTAG_REQUIRE(path);
  SEQTAG_REQUIRE(out);
  return Guard([&] {
    seqtag::LoadedCheckpoint loaded = seqtag::LoadCheckpointFile(path);
    auto model = std::make_unique<seqtag_model>();
    model->model = std::move(loaded.model);
    model->config = loaded.config;
    *out = model.release();
  });
}

seqtag_status seqtag_model_info(const seqtag_model *model, char **out) {
  SEQTAG_REQUIRE(model);
  SEQTAG_REQUIRE(out);
  return Guard([&] {
    const seqtag::JointModel &m = *model->model;
    std::ostringstream s;
    s << "arch\t" << seqtag::ArchitectureName(m.arch()) << '\n';
    s << "target_task\t" << m.spec().target.name << '\n';
    s << "target_labels\t" << m.spec().target.labels.size() << '\n';
    if (m.has_source()) {
      s << "source_task\t" << m.spec().source->name << '\n';
      s << "source_labels\t" << m.spec().source->labels.size() << '\n';
    }
    size_t shared = 0, total = 0;
    for (const auto &[name, e] : m.registry().entries()) {
      total += e.param->value.size();
      if (e.scope == seqtag::Scope::kShared) shared += e.param->value.size();
    }
    s << "parameters\t" << total << '\n';
    s << "shared_parameters\t" << shared << '\n';
    if (model->result) {
      s << "steps\t" << model->result->steps << '\n';
      s << "best_step\t" << model->result->best_step << '\n';
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.6f", model->result->best_target_dev);
      s << "best_target_dev\t" << buf << '\n';
    }
    *out = Dup(s.str());
  });
}

seqtag_status seqtag_evaluate(const seqtag_model *model,
                              const seqtag_options *options, char **report,
                              double *value) {
  SEQTAG_REQUIRE(model);
  SEQTAG_REQUIRE(options);
  return Guard([&] {
    seqtag::EvalReport r =
        seqtag::EvaluateFile(*model->model, WithModelConfig(options, model));
    if (value != nullptr) *value = r.value;
    if (report != nullptr) *report = Dup(r.ToText());
  });
}

seqtag_status seqtag_predict(const seqtag_model *model,
                             const seqtag_options *options, char **out) {
  SEQTAG_REQUIRE(model);
  SEQTAG_REQUIRE(options);
  SEQTAG_REQUIRE(out);
  return Guard([&] {
    std::ostringstream text;
    seqtag::PredictFile(*model->model, WithModelConfig(options, model), text);
    *out = Dup(text.str());
  });
}

seqtag_status seqtag_split(const char *input, uint64_t seed,
                           const char *train_out, const char *dev_out,
                           const char *test_out, size_t sizes[3]) {
  SEQTAG_REQUIRE(input);
  SEQTAG_REQUIRE(train_out);
  SEQTAG_REQUIRE(dev_out);
  SEQTAG_REQUIRE(test_out);
  return Guard([&] {
    seqtag::SplitSizes s =
        seqtag::SplitFile(input, seed, train_out, dev_out, test_out);
    if (sizes != nullptr) {
      sizes[0] = s.train;
      sizes[1] = s.dev;
      sizes[2] = s.test;
    }
  });
}

seqtag_status seqtag_subsample(const char *input, double rate, uint64_t seed,
                               const char *output, size_t *kept) {
  SEQTAG_REQUIRE(input);
  SEQTAG_REQUIRE(output);
  return Guard([&] {
    size_t n = seqtag::SubsampleFile(input, rate, seed, output);
    if (kept != nullptr) *kept = n;
  });
}

}  // extern "C"
