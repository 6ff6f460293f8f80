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

#ifndef SEQTAG_PIPELINE_H_
#define SEQTAG_PIPELINE_H_

#include <memory>
#include <ostream>
#include <string>

#include "seqtag/corpus.h"
#include "seqtag/training.h"
#include "seqtag/transfer.h"

namespace seqtag {

// Everything a command needs: hyperparameters plus file locations and task
// settings. Keys use underscores; SetOption also accepts dashes.
struct RunOptions {
  TrainConfig config;
  Architecture arch = Architecture::kNone;

  std::string task = "target";
  std::string source_task = "source";
  MetricKind metric = MetricKind::kAccuracy;
  MetricKind source_metric = MetricKind::kAccuracy;

  std::string train, dev, test;
  std::string source_train, source_dev;
  std::string label_map;
  std::string embeddings;
  std::string extra_features;      // sidecar for --train (and eval/predict input)
  std::string dev_extra_features;
  std::string source_extra_features;
  std::string source_dev_extra_features;

  // Unlabeled input for predict; falls back to `test`.
  std::string input;

  std::string checkpoint;
  std::string out;
  std::string log;
  // Task view used by eval and predict.
  Task view = Task::kTarget;
  bool metric_set = false;

  ConllColumns columns;
};

// Throws a config error for unknown keys or malformed values.
void SetOption(RunOptions *options, const std::string &key,
               const std::string &value);
// Flat "key = value" file; '#' starts a comment line.
void LoadOptionsFile(RunOptions *options, const std::string &path);
void LoadOptionsText(RunOptions *options, const std::string &text);

struct TrainOutcome {
  std::unique_ptr<JointModel> model;
  TrainConfig config;
  TrainResult result;
  std::string log;
  EmbeddingReport embeddings;
};

// Reads the data, builds vocabularies and the model for the chosen
// architecture, and trains it.
TrainOutcome RunTraining(const RunOptions &options, const TrainHooks &hooks = {});

struct EvalReport {
  MetricKind metric = MetricKind::kAccuracy;
  double value = 0.0;
  size_t sentences = 0;
  size_t tokens = 0;
  std::optional<ChunkScore> chunks;

  // "metric<TAB>value" lines, plus per-type lines for chunk F1.
  std::string ToText() const;
};

// Scores `options.test` with the model. Predictions are compared by tag name
// after the output label mapping, so T-A models are scored in the target
// tagset.
EvalReport EvaluateFile(const JointModel &model, const RunOptions &options);

// Writes each line of `options.input` with the predicted tag appended.
void PredictFile(const JointModel &model, const RunOptions &options,
                 std::ostream &out);

// Seeded 80/10/10 split of `input` written to three files.
SplitSizes SplitFile(const std::string &input, uint64_t seed,
                     const std::string &train_out, const std::string &dev_out,
                     const std::string &test_out);

// Keeps round(rate * N) sentences of `input`.
size_t SubsampleFile(const std::string &input, double rate, uint64_t seed,
                     const std::string &output);

}  // namespace seqtag

#endif  // SEQTAG_PIPELINE_H_
