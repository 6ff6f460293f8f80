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

#ifndef SEQTAG_TRAINING_H_
#define SEQTAG_TRAINING_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "seqtag/metrics.h"
#include "seqtag/rng.h"
#include "seqtag/sentence.h"
#include "seqtag/transfer.h"

namespace seqtag {

struct TrainConfig {
  size_t char_emb_dim = 25;
  size_t word_emb_dim = 50;
  size_t char_hidden = 80;
  size_t word_hidden = 300;
  double learning_rate = 0.01;
  // Probability of sampling the source task at each step.
  double source_prob = 0.5;
  size_t batch_size = 16;
  double cost_weight = 1.0;
  size_t max_steps = 20000;
  // Evaluations without improvement before stopping.
  size_t patience = 10;
  size_t eval_interval = 100;
  uint64_t seed = 1;
  // Fraction of target training sentences kept.
  double labeling_rate = 1.0;
  bool fine_tune_embeddings = true;
  size_t min_count = 1;
  bool lowercase_words = false;
  // Global gradient-norm cap; 0 disables clipping.
  double clip_norm = 0.0;
  // Verify after every step that the inactive task's own parameters did not
  // move.
  bool check_isolation = false;

  ModelDims dims() const {
    return {char_emb_dim, word_emb_dim, char_hidden, word_hidden};
  }
  // Throws a config error for out-of-range values.
  void Validate() const;
};

// theta -= lr * g / (sqrt(G) + eps) after G += g * g, elementwise.
void AdaGradStep(Tensor *theta, const Tensor &g, Tensor *accumulator,
                 double learning_rate, double epsilon = 1e-8);

class AdaGrad {
 public:
  explicit AdaGrad(double learning_rate, double epsilon = 1e-8)
      : learning_rate_(learning_rate), epsilon_(epsilon) {}

  void Step(Parameter *p);
  const Tensor *Accumulator(const Parameter *p) const;

 private:
  double learning_rate_;
  double epsilon_;
  std::unordered_map<const Parameter *, Tensor> accumulators_;
};

// Bernoulli draw: the source task with probability p_source.
Task SampleTask(Rng &rng, double p_source);

// Cycles through a shuffled index order, reshuffling at every epoch.
class Batcher {
 public:
  Batcher(size_t n, Rng rng);
  std::vector<size_t> Next(size_t batch_size);
  size_t epoch() const { return epoch_; }

 private:
  void Reshuffle();

  size_t n_;
  Rng rng_;
  std::vector<size_t> order_;
  size_t cursor_ = 0;
  size_t epoch_ = 0;
};

struct TaskCorpus {
  std::vector<Sentence> train;
  std::vector<Sentence> dev;
};

struct EvalResult {
  double value = 0.0;
  std::vector<std::vector<size_t>> predictions;
  std::optional<ChunkScore> chunks;
};

std::vector<size_t> Predict(const TaskModel &model, const Sentence &sentence);

// Decodes every sentence and scores it with the task metric: token accuracy
// or chunk-level F1 over the label names.
EvalResult Evaluate(const TaskModel &model, const std::vector<Sentence> &data,
                    MetricKind metric);

// Loss of one sentence; with backward = true gradients are accumulated into
// the view's parameters.
double SentenceLoss(const TaskModel &model, const Sentence &sentence,
                    double cost_weight, bool backward);

struct TrainLogEntry {
  size_t step = 0;
  size_t source_steps = 0;
  size_t target_steps = 0;
  double loss_ema = 0.0;
  double target_dev = 0.0;
  std::optional<double> source_dev;
};

struct TrainResult {
  std::vector<TrainLogEntry> log;
  size_t steps = 0;
  size_t best_step = 0;
  double best_target_dev = 0.0;
};

struct TrainHooks {
  // Replaces the logged source dev metric; used to show that it never
  // influences stopping.
  std::function<double(size_t step)> source_dev_metric;
  // Called after every optimizer step.
  std::function<void(size_t step, Task task)> after_step;
};

// Joint training: each step samples a task, takes the next batch of that
// task, and applies AdaGrad to the shared parameters and that task's own
// parameters. The target dev metric drives early stopping; the best
// parameters are restored before returning. For Architecture::kNone the
// source corpus is ignored and every step trains the target.
TrainResult TrainJoint(JointModel &model, const TaskCorpus *source,
                       const TaskCorpus &target, const TrainConfig &config,
                       const TrainHooks &hooks = {});

// Tab-separated lines: step, task counts, loss EMA, target dev, source dev.
std::string FormatTrainLog(const std::vector<TrainLogEntry> &log);

// Order-sensitive hash of parameter values, for isolation checks.
uint64_t ParameterChecksum(const std::vector<ParamRef> &params);

}  // namespace seqtag

#endif  // SEQTAG_TRAINING_H_
