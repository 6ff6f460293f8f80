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

#include "seqtag/pipeline.h"

#include <fstream>
#include <set>
#include <sstream>

#include "seqtag/checkpoint.h"
#include "seqtag/error.h"
#include "seqtag/log.h"

namespace seqtag {

// --- Options ----------------------------------------------------------------

void SetOption(RunOptions *o, const std::string &raw_key,
               const std::string &value) {
  std::string key = raw_key;
  for (char &c : key) {
    if (c == '-') c = '_';
  }
  if (SetConfigValue(&o->config, key, value)) return;

  std::map<std::string, std::string *> paths = {
      {"train", &o->train},
      {"dev", &o->dev},
      {"test", &o->test},
      {"input", &o->input},
      {"source_train", &o->source_train},
      {"source_dev", &o->source_dev},
      {"label_map", &o->label_map},
      {"embeddings", &o->embeddings},
      {"extra_features", &o->extra_features},
      {"dev_extra_features", &o->dev_extra_features},
      {"source_extra_features", &o->source_extra_features},
      {"source_dev_extra_features", &o->source_dev_extra_features},
      {"checkpoint", &o->checkpoint},
      {"out", &o->out},
      {"log", &o->log},
      {"task", &o->task},
      {"source_task", &o->source_task},
  };
  if (auto it = paths.find(key); it != paths.end()) {
    *it->second = value;
  } else if (key == "arch") {
    o->arch = ParseArchitecture(value);
  } else if (key == "metric") {
    o->metric = ParseMetric(value);
    o->metric_set = true;
  } else if (key == "source_metric") {
    o->source_metric = ParseMetric(value);
  } else if (key == "view") {
    if (value == "source") {
      o->view = Task::kSource;
    } else if (value == "target") {
      o->view = Task::kTarget;
    } else {
      throw ConfigError("view must be source or target, got '" + value + "'");
    }
  } else if (key == "token_col" || key == "tag_col") {
    int v = 0;
    try {
      v = std::stoi(value);
    } catch (const std::exception &) {
      throw ConfigError("invalid column index for " + key + ": '" + value + "'");
    }
    if (key == "token_col") {
      if (v < 0) throw ConfigError("token_col must be nonnegative");
      o->columns.token_col = static_cast<size_t>(v);
    } else {
      o->columns.tag_col = v;
    }
  } else {
    throw ConfigError("unknown option '" + raw_key + "'");
  }
}

void LoadOptionsText(RunOptions *options, const std::string &text) {
  std::istringstream in(text);
  std::string line;
  size_t line_no = 0;
  auto trim = [](std::string s) {
    s.erase(0, s.find_first_not_of(" \t\r"));
    s.erase(s.find_last_not_of(" \t\r") + 1);
    return s;
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected key = value");
    }
    SetOption(options, trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
}

void LoadOptionsFile(RunOptions *options, const std::string &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  LoadOptionsText(options, buf.str());
}

// --- Training ---------------------------------------------------------------

namespace {

struct TaskFiles {
  std::vector<RawSentence> train, dev;
  ExtraFeatures train_extra, dev_extra;
};

ExtraFeatures ReadAligned(const std::string &path,
                          const std::vector<RawSentence> &sentences) {
  if (path.empty()) return {};
  ExtraFeatures extra = ReadExtraFeatures(path);
  if (extra.size() != sentences.size()) {
    throw ParseError(path + ": " + std::to_string(extra.size()) +
                     " sentences of extra features for " +
                     std::to_string(sentences.size()) + " corpus sentences");
  }
  for (size_t i = 0; i < extra.size(); ++i) {
    if (extra[i].size() != sentences[i].size()) {
      throw ParseError(path + ": sentence " + std::to_string(i + 1) +
                       " has " + std::to_string(extra[i].size()) +
                       " feature rows for " +
                       std::to_string(sentences[i].size()) + " tokens");
    }
  }
  return extra;
}

size_t ExtraWidth(const ExtraFeatures &extra) {
  return extra.empty() ? 0 : extra[0][0].size();
}

TaskFiles ReadTask(const std::string &train, const std::string &dev,
                   const std::string &train_extra,
                   const std::string &dev_extra, const ConllColumns &columns) {
  TaskFiles f;
  f.train = ReadConll(train, columns);
  if (!dev.empty()) f.dev = ReadConll(dev, columns);
  f.train_extra = ReadAligned(train_extra, f.train);
  f.dev_extra = ReadAligned(dev_extra, f.dev);
  if (!f.train_extra.empty() && !f.dev.empty() && f.dev_extra.empty()) {
    throw ConfigError("training data has extra features but " + dev +
                      " has none");
  }
  if (!f.dev_extra.empty() && ExtraWidth(f.dev_extra) != ExtraWidth(f.train_extra)) {
    throw ConfigError("extra feature width differs between train and dev");
  }
  return f;
}

std::set<std::string> TagSet(const std::vector<const std::vector<RawSentence> *> &sets) {
  std::set<std::string> out;
  for (const auto *s : sets) {
    for (const RawSentence &r : *s) out.insert(r.tags.begin(), r.tags.end());
  }
  return out;
}

void MapTags(const LabelMapping &mapping, std::vector<RawSentence> *sentences) {
  for (RawSentence &s : *sentences) s.tags = MapLabels(mapping, s.tags);
}

std::vector<Sentence> Index(const std::vector<RawSentence> &raw,
                            const ExtraFeatures &extra, const TaskModel &view,
                            bool lowercase) {
  std::vector<Sentence> out;
  out.reserve(raw.size());
  for (size_t i = 0; i < raw.size(); ++i) {
    Sentence s = IndexSentence(raw[i], *view.words, *view.chars, view.labels(),
                               lowercase);
    if (!extra.empty()) s.extra_features = extra[i];
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

TrainOutcome RunTraining(const RunOptions &o, const TrainHooks &hooks) {
  const TrainConfig &cfg = o.config;
  cfg.Validate();
  bool joint = o.arch != Architecture::kNone;
  if (o.train.empty() || o.dev.empty()) {
    throw ConfigError("training needs --train and --dev");
  }
  if (joint && o.source_train.empty()) {
    throw ConfigError(ArchitectureName(o.arch) + " needs --source-train");
  }

  TaskFiles target = ReadTask(o.train, o.dev, o.extra_features,
                              o.dev_extra_features, o.columns);
  if (target.dev.empty()) throw ConfigError(o.dev + " contains no sentences");
  {
    Rng rng = Rng::Derive(cfg.seed, "subsample");
    std::vector<size_t> keep =
        SubsampleIndices(target.train.size(), cfg.labeling_rate, rng);
    std::vector<RawSentence> train;
    ExtraFeatures extra;
    for (size_t i : keep) {
      train.push_back(std::move(target.train[i]));
      if (!target.train_extra.empty()) {
        extra.push_back(std::move(target.train_extra[i]));
      }
    }
    target.train = std::move(train);
    target.train_extra = std::move(extra);
  }
  if (target.train.empty()) {
    throw ConfigError("no target training sentences left after subsampling");
  }

  TaskFiles source;
  if (joint) {
    source = ReadTask(o.source_train, o.source_dev, o.source_extra_features,
                      o.source_dev_extra_features, o.columns);
    if (source.train.empty()) {
      throw ConfigError(o.source_train + " contains no sentences");
    }
  }

  ModelSpec spec;
  spec.arch = o.arch;
  spec.dims = cfg.dims();
  spec.seed = cfg.seed;
  const SharingScheme scheme = SchemeFor(o.arch);

  // T-A: move target tags into the source label space.
  std::optional<LabelMappingFile> mapping_file;
  if (o.arch == Architecture::kTA) {
    if (!o.label_map.empty()) {
      mapping_file = ReadLabelMapping(o.label_map);
      LabelMapping to_shared = TargetToShared(*mapping_file);
      MapTags(to_shared, &target.train);
      MapTags(to_shared, &target.dev);
    } else if (TagSet({&source.train, &source.dev}) !=
               TagSet({&target.train, &target.dev})) {
      throw ConfigError(
          "T-A with differing tag sets needs --label-map; use T-B for "
          "disparate label sets");
    }
  }

  std::vector<const std::vector<RawSentence> *> train_sets = {&target.train};
  if (joint) train_sets.push_back(&source.train);
  spec.chars = BuildCharVocabulary(train_sets);
  VocabularyOptions vopts{cfg.min_count, cfg.lowercase_words};
  if (scheme.words) {
    spec.words.emplace("shared", BuildWordVocabulary(train_sets, vopts));
  } else {
    spec.words.emplace("target", BuildWordVocabulary({&target.train}, vopts));
    if (joint) {
      spec.words.emplace("source", BuildWordVocabulary({&source.train}, vopts));
    }
  }

  spec.target.name = o.task;
  spec.target.metric = o.metric;
  spec.target.extra_dim = ExtraWidth(target.train_extra);
  if (o.arch == Architecture::kTA) {
    spec.target.labels = BuildTagVocabulary(
        {&source.train, &source.dev, &target.train, &target.dev});
  } else {
    spec.target.labels = BuildTagVocabulary({&target.train, &target.dev});
  }
  if (joint) {
    TaskSpec s;
    s.name = o.source_task;
    s.metric = o.source_metric;
    s.extra_dim = ExtraWidth(source.train_extra);
    s.labels = o.arch == Architecture::kTA
                   ? spec.target.labels
                   : BuildTagVocabulary({&source.train, &source.dev});
    spec.source = std::move(s);
  }
  if (mapping_file) {
    spec.output_mapping =
        SharedToTarget(*mapping_file, spec.target.labels.tokens());
  }

  TrainOutcome outcome;
  outcome.config = cfg;
  outcome.model = JointModel::Build(std::move(spec));
  JointModel &model = *outcome.model;
  for (const auto &[name, e] : model.registry().entries()) {
    if (name == "word_emb" || name.ends_with("/word_emb")) {
      e.param->trainable = cfg.fine_tune_embeddings;
    }
  }

  if (!o.embeddings.empty()) {
    EmbeddingReport total;
    for (const auto &[key, vocab] : model.spec().words) {
      Task task = key == "source" ? Task::kSource : Task::kTarget;
      EmbeddingReport r = LoadEmbeddings(o.embeddings, vocab,
                                         model.view(task).encoder.words,
                                         cfg.lowercase_words);
      total.entries += r.entries;
      total.matched += r.matched;
    }
    total.coverage = total.entries == 0 ? 0.0
                                        : static_cast<double>(total.matched) /
                                              static_cast<double>(total.entries);
    outcome.embeddings = total;
    Log(LogLevel::kInfo, "pretrained embedding coverage " +
                             std::to_string(total.coverage));
  }

  TaskCorpus target_corpus{
      Index(target.train, target.train_extra, model.target(), cfg.lowercase_words),
      Index(target.dev, target.dev_extra, model.target(), cfg.lowercase_words)};
  std::optional<TaskCorpus> source_corpus;
  if (joint) {
    source_corpus = TaskCorpus{
        Index(source.train, source.train_extra, model.source(),
              cfg.lowercase_words),
        Index(source.dev, source.dev_extra, model.source(), cfg.lowercase_words)};
  }

  outcome.result = TrainJoint(model, source_corpus ? &*source_corpus : nullptr,
                              target_corpus, cfg, hooks);
  outcome.log = FormatTrainLog(outcome.result.log);
  return outcome;
}

// --- Evaluation and prediction ----------------------------------------------

namespace {

std::vector<std::string> PredictNames(const JointModel &model,
                                      const TaskModel &view,
                                      const RawSentence &raw,
                                      const std::vector<Vec> *extra,
                                      bool lowercase) {
  RawSentence untagged = raw;
  untagged.tags.clear();
  Sentence s = IndexSentence(untagged, *view.words, *view.chars, view.labels(),
                             lowercase);
  if (extra != nullptr) s.extra_features = *extra;
  std::vector<std::string> names;
  const auto &mapping = model.spec().output_mapping.pairs;
  for (size_t id : Predict(view, s)) {
    const std::string &tag = view.labels().Token(id);
    auto it = mapping.find(tag);
    bool map = view.task == Task::kTarget && it != mapping.end();
    names.push_back(map ? it->second : tag);
  }
  return names;
}

std::string Fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

std::string EvalReport::ToText() const {
  std::string out = MetricName(metric) + "\t" + Fixed(value) + "\n";
  if (chunks) {
    out += "precision\t" + Fixed(chunks->precision) + "\n";
    out += "recall\t" + Fixed(chunks->recall) + "\n";
    for (const auto &[type, counts] : chunks->per_type) {
      double p, r, f;
      ScoreCounts(counts, &p, &r, &f);
      out += "precision[" + type + "]\t" + Fixed(p) + "\n";
      out += "recall[" + type + "]\t" + Fixed(r) + "\n";
      out += "f1[" + type + "]\t" + Fixed(f) + "\n";
    }
  }
  out += "sentences\t" + std::to_string(sentences) + "\n";
  out += "tokens\t" + std::to_string(tokens) + "\n";
  return out;
}

EvalReport EvaluateFile(const JointModel &model, const RunOptions &o) {
  if (o.test.empty()) throw ConfigError("evaluation needs --test");
  const TaskModel &view = model.view(o.view);
  std::vector<RawSentence> raw = ReadConll(o.test, o.columns);
  if (raw.empty()) throw DomainError(o.test + " contains no sentences");
  ExtraFeatures extra = ReadAligned(o.extra_features, raw);

  EvalReport report;
  report.metric = o.metric_set ? o.metric : view.spec->metric;
  std::vector<TagSequence> gold, pred;
  for (size_t i = 0; i < raw.size(); ++i) {
    gold.push_back(raw[i].tags);
    pred.push_back(PredictNames(model, view, raw[i],
                                extra.empty() ? nullptr : &extra[i],
                                o.config.lowercase_words));
    report.tokens += raw[i].size();
  }
  report.sentences = raw.size();
  if (report.metric == MetricKind::kAccuracy) {
    size_t correct = 0;
    for (size_t i = 0; i < gold.size(); ++i) {
      for (size_t t = 0; t < gold[i].size(); ++t) {
        if (gold[i][t] == pred[i][t]) ++correct;
      }
    }
    report.value =
        static_cast<double>(correct) / static_cast<double>(report.tokens);
  } else {
    report.chunks = ChunkF1(gold, pred);
    report.value = report.chunks->f1;
  }
  return report;
}

void PredictFile(const JointModel &model, const RunOptions &o,
                 std::ostream &out) {
  const std::string &path = o.input.empty() ? o.test : o.input;
  if (path.empty()) throw ConfigError("prediction needs --input");
  ConllColumns columns = o.columns;
  columns.require_tags = false;
  std::vector<RawSentence> raw = ReadConll(path, columns);
  ExtraFeatures extra = ReadAligned(o.extra_features, raw);
  const TaskModel &view = model.view(o.view);
  for (size_t i = 0; i < raw.size(); ++i) {
    std::vector<std::string> tags =
        PredictNames(model, view, raw[i], extra.empty() ? nullptr : &extra[i],
                     o.config.lowercase_words);
    for (size_t t = 0; t < raw[i].size(); ++t) {
      out << AnnotateLine(raw[i].lines[t], tags[t]) << '\n';
    }
    out << '\n';
  }
}

SplitSizes SplitFile(const std::string &input, uint64_t seed,
                     const std::string &train_out, const std::string &dev_out,
                     const std::string &test_out) {
  ConllColumns columns;
  columns.require_tags = false;
  std::vector<RawSentence> raw = ReadConll(input, columns);
  Rng rng = Rng::Derive(seed, "split");
  CorpusSplit split = SplitCorpus(raw, rng);
  WriteConllFile(train_out, split.train);
  WriteConllFile(dev_out, split.dev);
  WriteConllFile(test_out, split.test);
  return {split.train.size(), split.dev.size(), split.test.size()};
}

size_t SubsampleFile(const std::string &input, double rate, uint64_t seed,
                     const std::string &output) {
  ConllColumns columns;
  columns.require_tags = false;
  std::vector<RawSentence> raw = ReadConll(input, columns);
  Rng rng = Rng::Derive(seed, "subsample");
  std::vector<RawSentence> kept = Subsample(raw, rate, rng);
  WriteConllFile(output, kept);
  return kept.size();
}

}  // namespace seqtag
