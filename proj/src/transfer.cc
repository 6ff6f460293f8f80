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

#include "seqtag/transfer.h"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "seqtag/error.h"

namespace seqtag {

std::string ArchitectureName(Architecture arch) {
  switch (arch) {
    case Architecture::kNone: return "none";
    case Architecture::kTA: return "T-A";
    case Architecture::kTB: return "T-B";
    case Architecture::kTC: return "T-C";
  }
  return "?";
}

Architecture ParseArchitecture(const std::string &name) {
  if (name == "none") return Architecture::kNone;
  if (name == "T-A") return Architecture::kTA;
  if (name == "T-B") return Architecture::kTB;
  if (name == "T-C") return Architecture::kTC;
  throw ConfigError("unknown architecture '" + name +
                    "' (expected none, T-A, T-B or T-C)");
}

std::string TaskName(Task task) {
  return task == Task::kSource ? "source" : "target";
}

std::string ScopeName(Scope scope) {
  switch (scope) {
    case Scope::kShared: return "shared";
    case Scope::kSource: return "source";
    case Scope::kTarget: return "target";
  }
  return "?";
}

Scope ParseScope(const std::string &name) {
  if (name == "shared") return Scope::kShared;
  if (name == "source") return Scope::kSource;
  if (name == "target") return Scope::kTarget;
  throw ParseError("unknown parameter scope '" + name + "'");
}

Scope ScopeOf(Task task) {
  return task == Task::kSource ? Scope::kSource : Scope::kTarget;
}

std::string MetricName(MetricKind kind) {
  return kind == MetricKind::kAccuracy ? "accuracy" : "chunk-f1";
}

MetricKind ParseMetric(const std::string &name) {
  if (name == "accuracy") return MetricKind::kAccuracy;
  if (name == "chunk-f1") return MetricKind::kChunkF1;
  throw ConfigError("unknown metric '" + name +
                    "' (expected accuracy or chunk-f1)");
}

SharingScheme SchemeFor(Architecture arch) {
  switch (arch) {
    case Architecture::kNone: return {false, false, false};
    case Architecture::kTA: return {true, true, true};
    case Architecture::kTB: return {true, true, false};
    case Architecture::kTC: return {true, false, false};
  }
  return {};
}

// --- ParameterRegistry ------------------------------------------------------

ParamRef ParameterRegistry::Register(const std::string &name, Scope scope,
                                     std::vector<size_t> shape) {
  if (entries_.count(name)) {
    throw ConfigError("parameter '" + name + "' registered twice");
  }
  ParamRef p = MakeParameter(std::move(shape));
  entries_.emplace(name, Entry{p, scope});
  return p;
}

const ParameterRegistry::Entry *ParameterRegistry::Find(
    const std::string &name) const {
  auto it = entries_.find(name);
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<std::string> ParameterRegistry::Names(Scope scope) const {
  std::vector<std::string> out;
  for (const auto &[name, e] : entries_) {
    if (e.scope == scope) out.push_back(name);
  }
  return out;
}

std::vector<ParamRef> ParameterRegistry::TaskParameters(Task task) const {
  std::vector<ParamRef> out;
  for (const auto &[name, e] : entries_) {
    if (e.scope == Scope::kShared || e.scope == ScopeOf(task)) {
      out.push_back(e.param);
    }
  }
  return out;
}

std::vector<ParamRef> ParameterRegistry::ScopeParameters(Scope scope) const {
  std::vector<ParamRef> out;
  for (const auto &[name, e] : entries_) {
    if (e.scope == scope) out.push_back(e.param);
  }
  return out;
}

void ParameterRegistry::ZeroGrads() {
  for (auto &[name, e] : entries_) e.param->ZeroGrad();
}

std::vector<std::string> SharedParameterNames(
    const ParameterRegistry &registry) {
  return registry.Names(Scope::kShared);
}

// --- Label mapping ----------------------------------------------------------

std::vector<std::string> MapLabels(const LabelMapping &mapping,
                                   const std::vector<std::string> &tags) {
  std::vector<std::string> out;
  out.reserve(tags.size());
  for (const std::string &t : tags) {
    auto it = mapping.pairs.find(t);
    if (it == mapping.pairs.end()) {
      throw ConfigError("tag '" + t + "' has no entry in the label mapping (" +
                        std::to_string(mapping.line_count) + " lines)");
    }
    out.push_back(it->second);
  }
  return out;
}

LabelMappingFile ParseLabelMapping(std::istream &in,
                                   const std::string &source) {
  LabelMappingFile file;
  std::string line;
  bool seen_content = false;
  while (std::getline(in, line)) {
    ++file.line_count;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!seen_content && line.rfind("!direction:", 0) == 0) {
      std::string value = line.substr(11);
      value.erase(0, value.find_first_not_of(" \t"));
      value.erase(value.find_last_not_of(" \t") + 1);
      if (value == "source_to_target") {
        file.direction = LabelMappingFile::Direction::kSourceToTarget;
      } else if (value == "target_to_source") {
        file.direction = LabelMappingFile::Direction::kTargetToSource;
      } else {
        throw ParseError(source + ":" + std::to_string(file.line_count) +
                         ": unknown direction '" + value + "'");
      }
      seen_content = true;
      continue;
    }
    seen_content = true;
    size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size() ||
        line.find('\t', tab + 1) != std::string::npos) {
      throw ParseError(source + ":" + std::to_string(file.line_count) +
                       ": expected two tab-separated tags");
    }
    std::string a = line.substr(0, tab), b = line.substr(tab + 1);
    if (file.direction == LabelMappingFile::Direction::kSourceToTarget) {
      file.pairs.emplace_back(a, b);
    } else {
      file.pairs.emplace_back(b, a);
    }
  }
  return file;
}

LabelMappingFile ReadLabelMapping(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return ParseLabelMapping(in, path);
}

LabelMapping TargetToShared(const LabelMappingFile &file) {
  LabelMapping m;
  m.line_count = file.line_count;
  for (const auto &[src, tgt] : file.pairs) {
    auto [it, inserted] = m.pairs.emplace(tgt, src);
    if (!inserted && it->second != src) {
      throw ConfigError("target tag '" + tgt + "' is mapped to both '" +
                        it->second + "' and '" + src + "'");
    }
  }
  return m;
}

LabelMapping SharedToTarget(const LabelMappingFile &file,
                            const std::vector<std::string> &shared_tags) {
  LabelMapping m;
  m.line_count = file.line_count;
  for (const auto &[src, tgt] : file.pairs) m.pairs.emplace(src, tgt);
  for (const std::string &t : shared_tags) m.pairs.emplace(t, t);
  return m;
}

// --- JointModel -------------------------------------------------------------

std::unique_ptr<JointModel> JointModel::Build(ModelSpec spec) {
  bool joint = spec.arch != Architecture::kNone;
  if (joint && !spec.source) {
    throw ConfigError(ArchitectureName(spec.arch) + " requires a source task");
  }
  if (!joint && spec.source) {
    throw ConfigError("single-task training takes no source task");
  }
  if (spec.arch == Architecture::kTA &&
      spec.source->labels.tokens() != spec.target.labels.tokens()) {
    throw ConfigError(
        "T-A needs one label space for both tasks; supply a label mapping or "
        "use T-B for disparate label sets");
  }
  const ModelDims &d = spec.dims;
  if (d.char_emb == 0 || d.word_emb == 0 || d.char_hidden == 0 ||
      d.word_hidden == 0) {
    throw ConfigError("model dimensions must be positive");
  }
  std::unique_ptr<JointModel> model(new JointModel(std::move(spec)));
  model->target_ = model->BuildView(Task::kTarget);
  if (joint) model->source_ = model->BuildView(Task::kSource);
  return model;
}

const TaskModel &JointModel::view(Task task) const {
  if (task == Task::kSource) {
    if (!source_) throw ConfigError("model has no source task");
    return *source_;
  }
  return *target_;
}

std::string JointModel::WordTableKey(Task task) const {
  if (SchemeFor(spec_.arch).words) return "shared";
  return TaskName(task);
}

namespace {

// Initialization stream key. Target and shared parameters use the bare role
// so a target view starts from the same values under every architecture.
std::string InitKey(Task task, const std::string &role, bool shared) {
  if (shared || task == Task::kTarget) return "init/" + role;
  return "init/source/" + role;
}

}  // namespace

ParamRef JointModel::Param(Task task, const std::string &role,
                           std::vector<size_t> shape, bool shared) {
  std::string name = shared ? role : TaskName(task) + "/" + role;
  if (const auto *e = registry_.Find(name)) return e->param;
  ParamRef p = registry_.Register(
      name, shared ? Scope::kShared : ScopeOf(task), std::move(shape));
  Rng rng = Rng::Derive(spec_.seed, InitKey(task, role, shared));
  GlorotUniform(&p->value, rng);
  return p;
}

EmbeddingTable JointModel::Embeddings(Task task, const std::string &role,
                                      const Vocabulary &vocab, size_t dim,
                                      bool shared) {
  std::string name = shared ? role : TaskName(task) + "/" + role;
  EmbeddingTable table;
  table.pad_index = Vocabulary::kPad;
  table.unk_index = Vocabulary::kUnk;
  if (const auto *e = registry_.Find(name)) {
    table.weights = e->param;
    return table;
  }
  table.weights = registry_.Register(
      name, shared ? Scope::kShared : ScopeOf(task), {vocab.size(), dim});
  // Rows are keyed by token so that a word starts from the same vector no
  // matter which other words share the table.
  double bound = std::sqrt(3.0 / static_cast<double>(dim));
  std::string key = InitKey(task, role, shared) + "/";
  for (size_t i = 0; i < vocab.size(); ++i) {
    if (i == Vocabulary::kPad) continue;
    Rng rng = Rng::Derive(spec_.seed, key + vocab.Token(i));
    for (double &v : table.weights->value.row(i)) v = rng.Uniform(-bound, bound);
  }
  return table;
}

BiGruStack JointModel::Stack(Task task, const std::string &role, size_t input,
                             size_t hidden, bool shared) {
  BiGruStack stack;
  static const char *kDirs[2] = {"fwd", "bwd"};
  static const char *kMats[6] = {"w_rx", "w_rh", "w_zx", "w_zh", "w_hx", "w_hh"};
  for (size_t l = 0; l < 2; ++l) {
    size_t in = l == 0 ? input : 2 * hidden;
    for (size_t d = 0; d < 2; ++d) {
      GruCell &cell = d == 0 ? stack.layers[l].forward : stack.layers[l].backward;
      auto mats = cell.mutable_params();
      for (size_t m = 0; m < 6; ++m) {
        bool recurrent = m % 2 == 1;
        std::string r = role + "/l" + std::to_string(l) + "/" + kDirs[d] + "/" +
                        kMats[m];
        *mats[m] = Param(task, r, {hidden, recurrent ? hidden : in}, shared);
      }
    }
  }
  return stack;
}

std::unique_ptr<TaskModel> JointModel::BuildView(Task task) {
  const SharingScheme scheme = SchemeFor(spec_.arch);
  const ModelDims &d = spec_.dims;
  const TaskSpec &task_spec =
      task == Task::kSource ? *spec_.source : spec_.target;

  auto view = std::make_unique<TaskModel>();
  view->task = task;
  view->spec = &task_spec;
  view->chars = &spec_.chars;
  auto words = spec_.words.find(WordTableKey(task));
  if (words == spec_.words.end()) {
    throw ConfigError("missing word vocabulary '" + WordTableKey(task) + "'");
  }
  view->words = &words->second;

  SentenceEncoder &enc = view->encoder;
  enc.chars = Embeddings(task, "char_emb", spec_.chars, d.char_emb, scheme.chars);
  enc.char_stack = Stack(task, "char_gru", d.char_emb, d.char_hidden, scheme.chars);
  enc.words = Embeddings(task, "word_emb", *view->words, d.word_emb, scheme.words);
  enc.word_stack = Stack(task, "word_gru", 2 * d.char_hidden + d.word_emb,
                         d.word_hidden, scheme.words);

  size_t labels = task_spec.labels.size();
  if (labels == 0) throw ConfigError("task '" + task_spec.name + "' has no labels");
  size_t features = 2 * d.word_hidden;
  CrfLayer &crf = view->crf;
  crf.emission = Param(task, "crf/emission", {labels, features}, scheme.crf);
  crf.transitions = Param(task, "crf/transitions", {labels, labels}, scheme.crf);
  std::string init_name = scheme.crf ? "crf/initial" : TaskName(task) + "/crf/initial";
  if (const auto *e = registry_.Find(init_name)) {
    crf.initial = e->param;
  } else {
    crf.initial = registry_.Register(
        init_name, scheme.crf ? Scope::kShared : ScopeOf(task), {labels});
  }
  if (task_spec.extra_dim > 0) {
    crf.extra = Param(task, "crf/extra", {labels, task_spec.extra_dim}, false);
  }
  return view;
}

}  // namespace seqtag
