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

// seqtag command-line tool. Links only the C interface.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "seqtag/seqtag.h"

namespace {

int ExitCode(seqtag_status status) {
  switch (status) {
    case SEQTAG_OK:
      return 0;
    case SEQTAG_ERR_CONFIG:
    case SEQTAG_ERR_ARGUMENT:
      return 2;
    default:
      return 1;
  }
}

// Thrown to unwind out of a command with a status already reported.
struct Failure {
  seqtag_status status;
};

void Check(seqtag_status status) {
  if (status == SEQTAG_OK) return;
  std::cerr << "seqtag: " << seqtag_status_name(status) << ": "
            << seqtag_last_error() << "\n";
  throw Failure{status};
}

struct OptionsDeleter {
  void operator()(seqtag_options *o) const { seqtag_options_destroy(o); }
};
struct ModelDeleter {
  void operator()(seqtag_model *m) const { seqtag_model_destroy(m); }
};
struct StringDeleter {
  void operator()(char *s) const { seqtag_string_free(s); }
};
using OptionsPtr = std::unique_ptr<seqtag_options, OptionsDeleter>;
using ModelPtr = std::unique_ptr<seqtag_model, ModelDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

// Flags that map one-to-one onto option keys. Values are forwarded as text
// after the config file, so flags override file values.
class KeyedFlags {
 public:
  void Add(CLI::App *app, const std::string &flag, const std::string &key,
           const std::string &help) {
    CLI::Option *opt = app->add_option(flag, values_[key], help);
    options_.emplace_back(key, opt);
  }

  void Apply(seqtag_options *o) const {
    for (const auto &[key, opt] : options_) {
      if (opt->count() > 0) {
        Check(seqtag_options_set(o, key.c_str(), values_.at(key).c_str()));
      }
    }
  }

 private:
  std::map<std::string, std::string> values_;
  std::vector<std::pair<std::string, CLI::Option *>> options_;
};

struct Command {
  CLI::App *app = nullptr;
  KeyedFlags flags;
  std::string config;
  std::vector<std::string> sets;

  OptionsPtr BuildOptions() const {
    seqtag_options *raw = nullptr;
    Check(seqtag_options_create(&raw));
    OptionsPtr o(raw);
    if (!config.empty()) Check(seqtag_options_load(o.get(), config.c_str()));
    for (const std::string &kv : sets) {
      size_t eq = kv.find('=');
      if (eq == std::string::npos) {
        std::cerr << "seqtag: --set expects key=value, got '" << kv << "'\n";
        throw Failure{SEQTAG_ERR_CONFIG};
      }
      Check(seqtag_options_set(o.get(), kv.substr(0, eq).c_str(),
                               kv.substr(eq + 1).c_str()));
    }
    flags.Apply(o.get());
    return o;
  }
};

void AddCommon(Command *c) {
  c->app->add_option("--config", c->config, "key = value options file");
  c->app->add_option("--set", c->sets,
                     "Override any option as key=value (repeatable)");
  c->flags.Add(c->app, "--extra-features", "extra_features",
               "Per-token feature sidecar for the main input file");
  c->flags.Add(c->app, "--token-col", "token_col", "Token column (0-based)");
}

void WriteText(const std::string &path, const char *text) {
  if (path.empty() || path == "-") {
    std::fputs(text, stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "seqtag: cannot write " << path << "\n";
    throw Failure{SEQTAG_ERR_IO};
  }
}

ModelPtr LoadModel(const std::string &path) {
  seqtag_model *raw = nullptr;
  Check(seqtag_model_load(path.c_str(), &raw));
  return ModelPtr(raw);
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Sequence tagger with cross-task transfer"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(seqtag_version()));

  // train
  Command train;
  train.app = app.add_subcommand("train", "Train a tagger");
  AddCommon(&train);
  std::string checkpoint_out, log_out;
  train.app->add_option("--checkpoint", checkpoint_out,
                        "Where to write the best-dev checkpoint")
      ->required();
  train.app->add_option("--log", log_out, "Training log file (default stdout)");
  const std::vector<std::tuple<std::string, std::string, std::string>>
      train_flags = {
          {"--arch", "arch", "none, T-A, T-B or T-C"},
          {"--task", "task", "Target task name"},
          {"--source-task", "source_task", "Source task name"},
          {"--train", "train", "Target training data (CoNLL)"},
          {"--dev", "dev", "Target development data"},
          {"--test", "test", "Target test data, scored after training"},
          {"--source-train", "source_train", "Source training data"},
          {"--source-dev", "source_dev", "Source development data"},
          {"--label-map", "label_map", "Target/source tag mapping for T-A"},
          {"--labeling-rate", "labeling_rate",
           "Fraction of target training sentences kept"},
          {"--source-prob", "source_prob", "Probability of a source step"},
          {"--seed", "seed", "Random seed"},
          {"--embeddings", "embeddings", "Pretrained word vectors (text)"},
          {"--dev-extra-features", "dev_extra_features",
           "Feature sidecar for --dev"},
          {"--source-extra-features", "source_extra_features",
           "Feature sidecar for --source-train"},
          {"--source-dev-extra-features", "source_dev_extra_features",
           "Feature sidecar for --source-dev"},
          {"--metric", "metric", "Target metric: accuracy or chunk-f1"},
          {"--source-metric", "source_metric", "Source metric"},
          {"--learning-rate", "learning_rate", "AdaGrad learning rate"},
          {"--batch-size", "batch_size", "Sentences per step"},
          {"--max-steps", "max_steps", "Step budget"},
          {"--patience", "patience", "Evaluations without improvement"},
          {"--eval-interval", "eval_interval", "Steps between evaluations"},
          {"--cost-weight", "cost_weight", "Hamming cost per wrong tag"},
          {"--char-emb-dim", "char_emb_dim", "Character embedding size"},
          {"--word-emb-dim", "word_emb_dim", "Word embedding size"},
          {"--char-hidden", "char_hidden", "Character GRU size per direction"},
          {"--word-hidden", "word_hidden", "Word GRU size per direction"},
          {"--clip-norm", "clip_norm", "Gradient norm cap (0 disables)"},
      };
  for (const auto &[flag, key, help] : train_flags) {
    train.flags.Add(train.app, flag, key, help);
  }

  // eval
  Command eval;
  eval.app = app.add_subcommand("eval", "Score a labeled file");
  AddCommon(&eval);
  std::string eval_checkpoint, eval_out;
  eval.app->add_option("--checkpoint", eval_checkpoint, "Model checkpoint")
      ->required();
  eval.app->add_option("--out", eval_out, "Report file (default stdout)");
  eval.flags.Add(eval.app, "--test", "test", "Labeled CoNLL file");
  eval.flags.Add(eval.app, "--metric", "metric",
                 "Override the task metric: accuracy or chunk-f1");
  eval.flags.Add(eval.app, "--view", "view",
                 "Which task head to use: target or source");

  // predict
  Command predict;
  predict.app = app.add_subcommand("predict", "Tag a file");
  AddCommon(&predict);
  std::string predict_checkpoint, predict_out;
  predict.app->add_option("--checkpoint", predict_checkpoint,
                          "Model checkpoint")
      ->required();
  predict.app->add_option("--out", predict_out, "Output file (default stdout)");
  predict.flags.Add(predict.app, "--input", "input", "CoNLL file to tag");
  predict.flags.Add(predict.app, "--test", "test", "Alias for --input");
  predict.flags.Add(predict.app, "--view", "view",
                    "Which task head to use: target or source");

  // split
  CLI::App *split = app.add_subcommand("split", "Seeded 80/10/10 split");
  std::string split_in, split_prefix;
  uint64_t split_seed = 1;
  split->add_option("input", split_in, "CoNLL file")->required();
  split->add_option("--out", split_prefix,
                    "Output prefix; writes PREFIX.{train,dev,test}.conll")
      ->required();
  split->add_option("--seed", split_seed, "Random seed");

  // subsample
  CLI::App *subsample =
      app.add_subcommand("subsample", "Keep a fraction of the sentences");
  std::string sub_in, sub_out;
  double sub_rate = 1.0;
  uint64_t sub_seed = 1;
  subsample->add_option("input", sub_in, "CoNLL file")->required();
  subsample->add_option("--out", sub_out, "Output file")->required();
  subsample->add_option("--labeling-rate,--rate", sub_rate,
                        "Fraction kept, in (0, 1]")
      ->required();
  subsample->add_option("--seed", sub_seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*train.app) {
      OptionsPtr o = train.BuildOptions();
      seqtag_model *raw = nullptr;
      char *log_raw = nullptr;
      Check(seqtag_train(o.get(), &raw, &log_raw));
      ModelPtr model(raw);
      StringPtr log(log_raw);
      Check(seqtag_model_save(model.get(), checkpoint_out.c_str()));
      WriteText(log_out, log.get());
      char *info_raw = nullptr;
      Check(seqtag_model_info(model.get(), &info_raw));
      StringPtr info(info_raw);
      std::cerr << info.get();
      if (train.app->get_option("--test")->count() > 0) {
        char *report_raw = nullptr;
        Check(seqtag_evaluate(model.get(), o.get(), &report_raw, nullptr));
        StringPtr report(report_raw);
        std::cerr << "test results\n" << report.get();
      }
    } else if (*eval.app) {
      OptionsPtr o = eval.BuildOptions();
      ModelPtr model = LoadModel(eval_checkpoint);
      char *report_raw = nullptr;
      Check(seqtag_evaluate(model.get(), o.get(), &report_raw, nullptr));
      StringPtr report(report_raw);
      WriteText(eval_out, report.get());
    } else if (*predict.app) {
      OptionsPtr o = predict.BuildOptions();
      ModelPtr model = LoadModel(predict_checkpoint);
      char *text_raw = nullptr;
      Check(seqtag_predict(model.get(), o.get(), &text_raw));
      StringPtr text(text_raw);
      WriteText(predict_out, text.get());
    } else if (*split) {
      size_t sizes[3];
      std::string train_path = split_prefix + ".train.conll";
      std::string dev_path = split_prefix + ".dev.conll";
      std::string test_path = split_prefix + ".test.conll";
      Check(seqtag_split(split_in.c_str(), split_seed, train_path.c_str(),
                         dev_path.c_str(), test_path.c_str(), sizes));
      std::printf("train\t%zu\ndev\t%zu\ntest\t%zu\n", sizes[0], sizes[1],
                  sizes[2]);
    } else if (*subsample) {
      size_t kept = 0;
      Check(seqtag_subsample(sub_in.c_str(), sub_rate, sub_seed,
                             sub_out.c_str(), &kept));
      std::printf("kept\t%zu\n", kept);
    }
  } catch (const Failure &f) {
    return ExitCode(f.status);
  }
  return 0;
}
