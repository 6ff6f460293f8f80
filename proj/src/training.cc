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

#include "seqtag/training.h"

#include <cmath>
#include <cstring>
#include <map>
#include <sstream>

#include "seqtag/crf.h"
#include "seqtag/encoder.h"
#include "seqtag/error.h"
#include "seqtag/log.h"

namespace seqtag {

void TrainConfig::Validate() const {
  if (char_emb_dim == 0 || word_emb_dim == 0 || char_hidden == 0 ||
      word_hidden == 0) {
    throw ConfigError("all model dimensions must be at least 1");
  }
  if (!(learning_rate > 0)) throw ConfigError("learning_rate must be positive");
  if (!(source_prob >= 0.0 && source_prob <= 1.0)) {
    throw ConfigError("source_prob must lie in [0, 1]");
  }
  if (!(labeling_rate > 0.0 && labeling_rate <= 1.0)) {
    throw ConfigError("labeling_rate must lie in (0, 1]");
  }
  if (batch_size == 0) throw ConfigError("batch_size must be at least 1");
  if (!(cost_weight >= 0)) throw ConfigError("cost_weight must be nonnegative");
  if (eval_interval == 0) throw ConfigError("eval_interval must be at least 1");
  if (max_steps == 0) throw ConfigError("max_steps must be at least 1");
  if (patience == 0) throw ConfigError("patience must be at least 1");
  if (!(clip_norm >= 0)) throw ConfigError("clip_norm must be nonnegative");
  if (min_count == 0) throw ConfigError("min_count must be at least 1");
}

// --- Optimizer --------------------------------------------------------------

void AdaGradStep(Tensor *theta, const Tensor &g, Tensor *accumulator,
                 double learning_rate, double epsilon) {
  if (!theta->SameShape(g) || !theta->SameShape(*accumulator)) {
    throw DimensionError("adagrad: parameter " + theta->ShapeString() +
                         ", gradient " + g.ShapeString() + ", accumulator " +
                         accumulator->ShapeString());
  }
  double *t = theta->data();
  double *acc = accumulator->data();
  const double *d = g.data();
  for (size_t i = 0; i < g.size(); ++i) {
    if (d[i] == 0.0) continue;
    acc[i] += d[i] * d[i];
    t[i] -= learning_rate * d[i] / (std::sqrt(acc[i]) + epsilon);
  }
}

void AdaGrad::Step(Parameter *p) {
  if (!p->trainable) return;
  auto it = accumulators_.find(p);
  if (it == accumulators_.end()) {
    it = accumulators_.emplace(p, Tensor(p->value.shape())).first;
  }
  AdaGradStep(&p->value, p->grad, &it->second, learning_rate_, epsilon_);
}

const Tensor *AdaGrad::Accumulator(const Parameter *p) const {
  auto it = accumulators_.find(p);
  return it == accumulators_.end() ? nullptr : &it->second;
}

Task SampleTask(Rng &rng, double p_source) {
  if (!(p_source >= 0.0 && p_source <= 1.0)) {
    throw ConfigError("task sampling probability must lie in [0, 1]");
  }
  return rng.Bernoulli(p_source) ? Task::kSource : Task::kTarget;
}

// --- Batching ---------------------------------------------------------------

Batcher::Batcher(size_t n, Rng rng) : n_(n), rng_(rng) {
  if (n == 0) throw DomainError("cannot batch an empty training set");
  Reshuffle();
}

void Batcher::Reshuffle() {
  order_.resize(n_);
  for (size_t i = 0; i < n_; ++i) order_[i] = i;
  rng_.Shuffle(&order_);
  cursor_ = 0;
}

std::vector<size_t> Batcher::Next(size_t batch_size) {
  if (cursor_ >= n_) {
    Reshuffle();
    ++epoch_;
  }
  size_t end = std::min(n_, cursor_ + batch_size);
  std::vector<size_t> batch(order_.begin() + cursor_, order_.begin() + end);
  cursor_ = end;
  return batch;
}

// --- Forward passes ---------------------------------------------------------

namespace {

const Features *ExtrasFor(const TaskModel &model, const Sentence &s) {
  if (!model.crf.extra) return nullptr;
  if (s.extra_features.size() != s.size()) {
    throw ConfigError("task '" + model.spec->name +
                      "' expects extra features for every token");
  }
  return &s.extra_features;
}

}  // namespace

std::vector<size_t> Predict(const TaskModel &model, const Sentence &sentence) {
  Features h = EncodeSentence(model.encoder, sentence);
  return Viterbi(model.crf, h, ExtrasFor(model, sentence)).tags;
}

EvalResult Evaluate(const TaskModel &model, const std::vector<Sentence> &data,
                    MetricKind metric) {
  if (data.empty()) throw DomainError("evaluation data is empty");
  EvalResult result;
  std::vector<std::vector<size_t>> gold;
  for (const Sentence &s : data) {
    result.predictions.push_back(Predict(model, s));
    gold.push_back(s.tag_ids);
  }
  if (metric == MetricKind::kAccuracy) {
    result.value = TokenAccuracy(gold, result.predictions);
    return result;
  }
  auto names = [&](const std::vector<std::vector<size_t>> &seqs) {
    std::vector<TagSequence> out;
    for (const auto &seq : seqs) {
      TagSequence tags;
      for (size_t id : seq) tags.push_back(model.labels().Token(id));
      out.push_back(std::move(tags));
    }
    return out;
  };
  result.chunks = ChunkF1(names(gold), names(result.predictions));
  result.value = result.chunks->f1;
  return result;
}

double SentenceLoss(const TaskModel &model, const Sentence &sentence,
                    double cost_weight, bool backward) {
  const Features *extras = ExtrasFor(model, sentence);
  if (!backward) {
    Features h = EncodeSentence(model.encoder, sentence);
    return MarginLoss(model.crf, h, sentence.tag_ids, {cost_weight}, extras);
  }
  SentenceTrace trace;
  Features h = EncodeSentence(model.encoder, sentence, &trace);
  Features dh;
  double loss =
      MarginLoss(model.crf, h, sentence.tag_ids, {cost_weight}, extras, &dh);
  EncodeSentenceBackward(model.encoder, trace, dh);
  return loss;
}

uint64_t ParameterChecksum(const std::vector<ParamRef> &params) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (const ParamRef &p : params) {
    for (double v : p->value.values()) {
      uint64_t bits;
      std::memcpy(&bits, &v, sizeof bits);
      h = (h ^ bits) * 0x100000001b3ULL;
    }
  }
  return h;
}

// --- Training loop ----------------------------------------------------------

namespace {

using Snapshot = std::map<std::string, Tensor>;

Snapshot TakeSnapshot(const ParameterRegistry &registry) {
  Snapshot s;
  for (const auto &[name, e] : registry.entries()) s.emplace(name, e.param->value);
  return s;
}

void Restore(ParameterRegistry &registry, const Snapshot &snapshot) {
  for (const auto &[name, e] : registry.entries()) {
    e.param->value = snapshot.at(name);
  }
}

std::string FormatDouble(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

TrainResult TrainJoint(JointModel &model, const TaskCorpus *source,
                       const TaskCorpus &target, const TrainConfig &config,
                       const TrainHooks &hooks) {
  config.Validate();
  bool joint = model.arch() != Architecture::kNone;
  if (target.train.empty()) throw ConfigError("target training set is empty");
  if (target.dev.empty()) throw ConfigError("target dev set is empty");
  if (joint && (source == nullptr || source->train.empty())) {
    throw ConfigError("joint training needs a nonempty source training set");
  }

  ParameterRegistry &registry = model.registry();
  std::vector<ParamRef> params[2] = {
      joint ? registry.TaskParameters(Task::kSource) : std::vector<ParamRef>{},
      registry.TaskParameters(Task::kTarget)};
  std::vector<ParamRef> own[2] = {registry.ScopeParameters(Scope::kSource),
                                  registry.ScopeParameters(Scope::kTarget)};
  bool check_isolation =
      config.check_isolation || LogEnabled(LogLevel::kDebug);

  AdaGrad optimizer(config.learning_rate);
  Rng task_rng = Rng::Derive(config.seed, "task");
  Batcher target_batches(target.train.size(),
                         Rng::Derive(config.seed, "batch/target"));
  std::optional<Batcher> source_batches;
  if (joint) {
    source_batches.emplace(source->train.size(),
                           Rng::Derive(config.seed, "batch/source"));
  }

  TrainResult result;
  Snapshot best;
  double best_metric = -INFINITY;
  size_t stale = 0;
  size_t counts[2] = {0, 0};
  double ema = 0.0;
  bool have_ema = false;

  auto evaluate = [&](size_t step) {
    TrainLogEntry entry;
    entry.step = step;
    entry.source_steps = counts[0];
    entry.target_steps = counts[1];
    entry.loss_ema = ema;
    entry.target_dev =
        Evaluate(model.target(), target.dev, model.target().spec->metric).value;
    if (hooks.source_dev_metric) {
      entry.source_dev = hooks.source_dev_metric(step);
    } else if (joint && !source->dev.empty()) {
      entry.source_dev =
          Evaluate(model.source(), source->dev, model.source().spec->metric)
              .value;
    }
    result.log.push_back(entry);
    Log(LogLevel::kInfo, "step " + std::to_string(step) + " loss " +
                             FormatDouble(ema) + " target dev " +
                             FormatDouble(entry.target_dev));
    if (entry.target_dev > best_metric) {
      best_metric = entry.target_dev;
      result.best_step = step;
      best = TakeSnapshot(registry);
      stale = 0;
    } else {
      ++stale;
    }
  };

  size_t step = 0;
  bool evaluated_last = false;
  while (step < config.max_steps) {
    ++step;
    Task task = joint ? SampleTask(task_rng, config.source_prob) : Task::kTarget;
    int t = task == Task::kSource ? 0 : 1;
    const TaskCorpus &corpus = task == Task::kSource ? *source : target;
    Batcher &batcher = task == Task::kSource ? *source_batches : target_batches;
    const TaskModel &view = model.view(task);
    std::vector<size_t> batch = batcher.Next(config.batch_size);

    uint64_t before = check_isolation ? ParameterChecksum(own[1 - t]) : 0;

    for (const ParamRef &p : params[t]) p->ZeroGrad();
    double loss = 0.0;
    for (size_t i : batch) {
      loss += SentenceLoss(view, corpus.train[i], config.cost_weight, true);
    }
    double scale = 1.0 / static_cast<double>(batch.size());
    loss *= scale;
    if (!std::isfinite(loss)) {
      throw NumericError("non-finite loss at step " + std::to_string(step) +
                         " on the " + TaskName(task) + " task");
    }
    double norm2 = 0.0;
    for (const ParamRef &p : params[t]) {
      for (double &g : p->grad.values()) {
        g *= scale;
        norm2 += g * g;
      }
    }
    if (config.clip_norm > 0 && std::sqrt(norm2) > config.clip_norm) {
      double shrink = config.clip_norm / std::sqrt(norm2);
      for (const ParamRef &p : params[t]) {
        for (double &g : p->grad.values()) g *= shrink;
      }
    }
    for (const ParamRef &p : params[t]) optimizer.Step(p.get());

    if (check_isolation && ParameterChecksum(own[1 - t]) != before) {
      throw DomainError("step " + std::to_string(step) + " on the " +
                        TaskName(task) + " task modified parameters owned by " +
                        "the other task");
    }

    ++counts[t];
    ema = have_ema ? 0.9 * ema + 0.1 * loss : loss;
    have_ema = true;
    if (hooks.after_step) hooks.after_step(step, task);

    evaluated_last = false;
    if (step % config.eval_interval == 0) {
      evaluate(step);
      evaluated_last = true;
      if (stale >= config.patience) break;
    }
  }
  if (!evaluated_last) evaluate(step);

  Restore(registry, best);
  result.steps = step;
  result.best_target_dev = best_metric;
  return result;
}

std::string FormatTrainLog(const std::vector<TrainLogEntry> &log) {
  std::ostringstream out;
  for (const TrainLogEntry &e : log) {
    out << e.step << '\t' << "source:" << e.source_steps
        << ",target:" << e.target_steps << '\t' << FormatDouble(e.loss_ema)
        << '\t' << FormatDouble(e.target_dev) << '\t'
        << (e.source_dev ? FormatDouble(*e.source_dev) : std::string("-"))
        << '\n';
  }
  return out.str();
}

}  // namespace seqtag
