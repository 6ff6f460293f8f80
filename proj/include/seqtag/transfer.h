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

#ifndef SEQTAG_TRANSFER_H_
#define SEQTAG_TRANSFER_H_

#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "seqtag/crf.h"
#include "seqtag/encoder.h"
#include "seqtag/vocabulary.h"

namespace seqtag {

enum class Task { kSource, kTarget };
enum class Scope { kShared, kSource, kTarget };

// kNone trains the target task alone; the other three are the joint
// architectures:
//   T-A  everything shared, one label space (target tags mapped into it)
//   T-B  encoder shared, CRF per task
//   T-C  character embeddings and character GRUs shared, rest per task
enum class Architecture { kNone, kTA, kTB, kTC };

std::string ArchitectureName(Architecture arch);
Architecture ParseArchitecture(const std::string &name);
std::string TaskName(Task task);
std::string ScopeName(Scope scope);
Scope ParseScope(const std::string &name);
Scope ScopeOf(Task task);

// Named parameters with a sharing scope. Shared entries are named by role
// ("word_gru/l0/fwd/w_rx"); task-specific ones carry a task prefix
// ("target/crf/emission").
class ParameterRegistry {
 public:
  struct Entry {
    ParamRef param;
    Scope scope;
  };

  ParameterRegistry() = default;
  ParameterRegistry(const ParameterRegistry &) = delete;
  ParameterRegistry &operator=(const ParameterRegistry &) = delete;

  // Creates and registers a zero-valued parameter. Throws on duplicates.
  ParamRef Register(const std::string &name, Scope scope,
                    std::vector<size_t> shape);

  const Entry *Find(const std::string &name) const;
  const std::map<std::string, Entry> &entries() const { return entries_; }

  // Sorted names of entries in the given scope.
  std::vector<std::string> Names(Scope scope) const;
  // Shared entries plus the task's own entries, in name order.
  std::vector<ParamRef> TaskParameters(Task task) const;
  std::vector<ParamRef> ScopeParameters(Scope scope) const;

  void ZeroGrads();

 private:
  std::map<std::string, Entry> entries_;
};

// Tag substitution table.
struct LabelMapping {
  std::map<std::string, std::string> pairs;
  // Number of lines in the file the mapping was read from.
  size_t line_count = 0;
};

// Elementwise substitution. Throws a config error naming the first unmapped
// tag.
std::vector<std::string> MapLabels(const LabelMapping &mapping,
                                   const std::vector<std::string> &tags);

// Contents of a label-mapping file, normalized to (source tag, target tag)
// pairs in file order.
struct LabelMappingFile {
  enum class Direction { kSourceToTarget, kTargetToSource };
  Direction direction = Direction::kSourceToTarget;
  std::vector<std::pair<std::string, std::string>> pairs;
  size_t line_count = 0;
};

LabelMappingFile ParseLabelMapping(std::istream &in,
                                   const std::string &source = "<stream>");
LabelMappingFile ReadLabelMapping(const std::string &path);

// Target tag -> source tag; used to move target data into the shared label
// space. Throws when a target tag is paired with two different source tags.
LabelMapping TargetToShared(const LabelMappingFile &file);
// Shared (source) tag -> target tag, taking the first pair listed for each
// source tag. Shared tags with no target partner map to themselves.
LabelMapping SharedToTarget(const LabelMappingFile &file,
                            const std::vector<std::string> &shared_tags);

enum class MetricKind { kAccuracy, kChunkF1 };
std::string MetricName(MetricKind kind);
MetricKind ParseMetric(const std::string &name);

struct TaskSpec {
  std::string name;
  MetricKind metric = MetricKind::kAccuracy;
  Vocabulary labels{false};
  // Width of the per-token extra feature block feeding the CRF; 0 for none.
  size_t extra_dim = 0;
};

struct ModelDims {
  size_t char_emb = 25;
  size_t word_emb = 50;
  size_t char_hidden = 80;
  size_t word_hidden = 300;
};

// One task's model assembled from registry parameters.
struct TaskModel {
  Task task = Task::kTarget;
  SentenceEncoder encoder;
  CrfLayer crf;
  const Vocabulary *chars = nullptr;
  const Vocabulary *words = nullptr;
  const TaskSpec *spec = nullptr;

  const Vocabulary &labels() const { return spec->labels; }
};

// Everything needed to construct a joint model. Word vocabularies are keyed
// by table: "shared" when the architecture shares word embeddings, otherwise
// "source"/"target".
struct ModelSpec {
  Architecture arch = Architecture::kNone;
  ModelDims dims;
  Vocabulary chars;
  std::map<std::string, Vocabulary> words;
  std::optional<TaskSpec> source;
  TaskSpec target;
  // Shared tag -> target tag for prediction output under T-A.
  LabelMapping output_mapping;
  uint64_t seed = 0;
};

// Registry plus aliased per-task views. Not copyable or movable: views point
// into the ModelSpec vocabularies.
class JointModel {
 public:
  static std::unique_ptr<JointModel> Build(ModelSpec spec);

  JointModel(const JointModel &) = delete;
  JointModel &operator=(const JointModel &) = delete;

  Architecture arch() const { return spec_.arch; }
  const ModelSpec &spec() const { return spec_; }
  ParameterRegistry &registry() { return registry_; }
  const ParameterRegistry &registry() const { return registry_; }

  bool has_source() const { return source_ != nullptr; }
  const TaskModel &view(Task task) const;
  const TaskModel &target() const { return *target_; }
  const TaskModel &source() const { return view(Task::kSource); }

  // Name of the word-vocabulary table used by a task.
  std::string WordTableKey(Task task) const;

 private:
  explicit JointModel(ModelSpec spec) : spec_(std::move(spec)) {}
  std::unique_ptr<TaskModel> BuildView(Task task);
  ParamRef Param(Task task, const std::string &role,
                 std::vector<size_t> shape, bool shared);
  EmbeddingTable Embeddings(Task task, const std::string &role,
                            const Vocabulary &vocab, size_t dim, bool shared);
  BiGruStack Stack(Task task, const std::string &role, size_t input,
                   size_t hidden, bool shared);

  ModelSpec spec_;
  ParameterRegistry registry_;
  std::unique_ptr<TaskModel> source_;
  std::unique_ptr<TaskModel> target_;
};

// Sorted names of the shared entries.
std::vector<std::string> SharedParameterNames(const ParameterRegistry &registry);

// Which components an architecture shares.
struct SharingScheme {
  bool chars = false;
  bool words = false;
  bool crf = false;
};
SharingScheme SchemeFor(Architecture arch);

}  // namespace seqtag

#endif  // SEQTAG_TRANSFER_H_
