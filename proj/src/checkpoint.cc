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

#include "seqtag/checkpoint.h"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "seqtag/error.h"

namespace seqtag {

// --- Config text ------------------------------------------------------------

namespace {

std::string FormatExact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

size_t ParseCount(const std::string &key, const std::string &value) {
  uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError("invalid integer for " + key + ": '" + value + "'");
  }
  return static_cast<size_t>(v);
}

double ParseReal(const std::string &key, const std::string &value) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size() ||
      !std::isfinite(v)) {
    throw ConfigError("invalid number for " + key + ": '" + value + "'");
  }
  return v;
}

bool ParseFlag(const std::string &key, const std::string &value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError("invalid boolean for " + key + ": '" + value + "'");
}

struct Field {
  std::function<std::string(const TrainConfig &)> get;
  std::function<void(TrainConfig *, const std::string &, const std::string &)>
      set;
};

template <typename T>
Field CountField(T TrainConfig::*member) {
  return {[member](const TrainConfig &c) { return std::to_string(c.*member); },
          [member](TrainConfig *c, const std::string &k, const std::string &v) {
            c->*member = static_cast<T>(ParseCount(k, v));
          }};
}

Field RealField(double TrainConfig::*member) {
  return {[member](const TrainConfig &c) { return FormatExact(c.*member); },
          [member](TrainConfig *c, const std::string &k, const std::string &v) {
            c->*member = ParseReal(k, v);
          }};
}

Field FlagField(bool TrainConfig::*member) {
  return {[member](const TrainConfig &c) {
            return std::string(c.*member ? "true" : "false");
          },
          [member](TrainConfig *c, const std::string &k, const std::string &v) {
            c->*member = ParseFlag(k, v);
          }};
}

const std::map<std::string, Field> &ConfigFields() {
  static const std::map<std::string, Field> fields = {
      {"batch_size", CountField(&TrainConfig::batch_size)},
      {"char_emb_dim", CountField(&TrainConfig::char_emb_dim)},
      {"char_hidden", CountField(&TrainConfig::char_hidden)},
      {"check_isolation", FlagField(&TrainConfig::check_isolation)},
      {"clip_norm", RealField(&TrainConfig::clip_norm)},
      {"cost_weight", RealField(&TrainConfig::cost_weight)},
      {"eval_interval", CountField(&TrainConfig::eval_interval)},
      {"fine_tune_embeddings", FlagField(&TrainConfig::fine_tune_embeddings)},
      {"labeling_rate", RealField(&TrainConfig::labeling_rate)},
      {"learning_rate", RealField(&TrainConfig::learning_rate)},
      {"lowercase_words", FlagField(&TrainConfig::lowercase_words)},
      {"max_steps", CountField(&TrainConfig::max_steps)},
      {"min_count", CountField(&TrainConfig::min_count)},
      {"patience", CountField(&TrainConfig::patience)},
      {"seed", CountField(&TrainConfig::seed)},
      {"source_prob", RealField(&TrainConfig::source_prob)},
      {"word_emb_dim", CountField(&TrainConfig::word_emb_dim)},
      {"word_hidden", CountField(&TrainConfig::word_hidden)},
  };
  return fields;
}

}  // namespace

std::string ConfigToText(const TrainConfig &config) {
  std::string out;
  for (const auto &[key, field] : ConfigFields()) {
    out += key + " = " + field.get(config) + "\n";
  }
  return out;
}

bool SetConfigValue(TrainConfig *config, const std::string &key,
                    const std::string &value) {
  auto it = ConfigFields().find(key);
  if (it == ConfigFields().end()) return false;
  it->second.set(config, key, value);
  return true;
}

// --- Binary encoding --------------------------------------------------------

namespace {

enum RecordKind : uint8_t { kText = 0, kTensor = 1 };

void PutU8(std::string *out, uint8_t v) { out->push_back(static_cast<char>(v)); }

void PutU32(std::string *out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out->push_back(static_cast<char>(v >> (8 * i)));
}

void PutU64(std::string *out, uint64_t v) {
  for (int i = 0; i < 8; ++i) out->push_back(static_cast<char>(v >> (8 * i)));
}

class Reader {
 public:
  explicit Reader(std::string data) : data_(std::move(data)) {}

  const char *Take(size_t n) {
    if (data_.size() - pos_ < n) throw ParseError("checkpoint is truncated");
    const char *p = data_.data() + pos_;
    pos_ += n;
    return p;
  }
  uint8_t U8() { return static_cast<uint8_t>(*Take(1)); }
  uint32_t U32() {
    const unsigned char *p = reinterpret_cast<const unsigned char *>(Take(4));
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(p[i]) << (8 * i);
    return v;
  }
  uint64_t U64() {
    const unsigned char *p = reinterpret_cast<const unsigned char *>(Take(8));
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(p[i]) << (8 * i);
    return v;
  }
  bool done() const { return pos_ == data_.size(); }

 private:
  std::string data_;
  size_t pos_ = 0;
};

struct Record {
  RecordKind kind = kText;
  std::string text;
  Scope scope = Scope::kShared;
  Tensor tensor;
};

std::string EncodeTensor(const Tensor &t, Scope scope) {
  std::string out;
  PutU8(&out, static_cast<uint8_t>(scope));
  PutU32(&out, static_cast<uint32_t>(t.rank()));
  for (size_t d : t.shape()) PutU64(&out, d);
  for (double v : t.values()) PutU64(&out, std::bit_cast<uint64_t>(v));
  return out;
}

std::string JoinLines(const std::vector<std::string> &items) {
  std::string out;
  for (const auto &s : items) out += s + "\n";
  return out;
}

std::vector<std::string> SplitLines(const std::string &text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

std::map<std::string, std::string> ParseKeyValues(const std::string &text) {
  std::map<std::string, std::string> out;
  for (const std::string &line : SplitLines(text)) {
    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError("checkpoint: malformed key/value line '" + line + "'");
    }
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t"));
      s.erase(s.find_last_not_of(" \t") + 1);
      return s;
    };
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

std::string TaskText(const TaskSpec &spec) {
  return "extra_dim = " + std::to_string(spec.extra_dim) +
         "\nmetric = " + MetricName(spec.metric) + "\nname = " + spec.name +
         "\n";
}

}  // namespace

void SaveCheckpoint(const JointModel &model, const TrainConfig &config,
                    std::ostream &out) {
  const ModelSpec &spec = model.spec();
  std::map<std::string, std::pair<RecordKind, std::string>> records;
  auto text = [&](const std::string &name, std::string body) {
    records[name] = {kText, std::move(body)};
  };
  // The stored dimensions always describe the saved tensors.
  TrainConfig stored = config;
  stored.char_emb_dim = spec.dims.char_emb;
  stored.word_emb_dim = spec.dims.word_emb;
  stored.char_hidden = spec.dims.char_hidden;
  stored.word_hidden = spec.dims.word_hidden;
  text("config", ConfigToText(stored));
  text("model/arch", ArchitectureName(spec.arch) + "\n");
  text("task/target", TaskText(spec.target));
  text("vocab/chars", JoinLines(spec.chars.tokens()));
  text("vocab/tags/target", JoinLines(spec.target.labels.tokens()));
  if (spec.source) {
    text("task/source", TaskText(*spec.source));
    text("vocab/tags/source", JoinLines(spec.source->labels.tokens()));
  }
  for (const auto &[key, vocab] : spec.words) {
    text("vocab/words/" + key, JoinLines(vocab.tokens()));
  }
  std::string mapping;
  for (const auto &[from, to] : spec.output_mapping.pairs) {
    mapping += from + "\t" + to + "\n";
  }
  text("mapping/output", mapping);
  for (const auto &[name, e] : model.registry().entries()) {
    records["param/" + name] = {kTensor, EncodeTensor(e.param->value, e.scope)};
  }

  std::string buf(kCheckpointMagic, 8);
  PutU32(&buf, kCheckpointVersion);
  PutU32(&buf, static_cast<uint32_t>(records.size()));
  for (const auto &[name, rec] : records) {
    PutU32(&buf, static_cast<uint32_t>(name.size()));
    buf += name;
    PutU8(&buf, rec.first);
    PutU64(&buf, rec.second.size());
    buf += rec.second;
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

void SaveCheckpointFile(const JointModel &model, const TrainConfig &config,
                        const std::string &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  SaveCheckpoint(model, config, out);
  if (!out) throw IoError("error writing " + path);
}

LoadedCheckpoint LoadCheckpoint(std::istream &in) {
  std::string data((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  Reader r(std::move(data));
  if (std::memcmp(r.Take(8), kCheckpointMagic, 8) != 0) {
    throw ParseError("not a seqtag checkpoint");
  }
  uint32_t version = r.U32();
  if (version != kCheckpointVersion) {
    throw ParseError("unsupported checkpoint version " + std::to_string(version));
  }
  std::map<std::string, Record> records;
  uint32_t count = r.U32();
  for (uint32_t i = 0; i < count; ++i) {
    uint32_t len = r.U32();
    std::string name(r.Take(len), len);
    Record rec;
    uint8_t kind = r.U8();
    uint64_t size = r.U64();
    Reader body(std::string(r.Take(size), size));
    if (kind == kText) {
      rec.kind = kText;
      rec.text = std::string(body.Take(size), size);
    } else if (kind == kTensor) {
      rec.kind = kTensor;
      uint8_t scope = body.U8();
      if (scope > 2) throw ParseError("checkpoint: bad scope in " + name);
      rec.scope = static_cast<Scope>(scope);
      std::vector<size_t> shape(body.U32());
      for (size_t &d : shape) d = body.U64();
      Tensor t(shape);
      for (double &v : t.values()) v = std::bit_cast<double>(body.U64());
      rec.tensor = std::move(t);
    } else {
      throw ParseError("checkpoint: unknown record kind in " + name);
    }
    if (!body.done()) throw ParseError("checkpoint: trailing bytes in " + name);
    records.emplace(std::move(name), std::move(rec));
  }
  if (!r.done()) throw ParseError("checkpoint: trailing data");

  auto need = [&](const std::string &name) -> const Record & {
    auto it = records.find(name);
    if (it == records.end()) throw ParseError("checkpoint: missing " + name);
    return it->second;
  };

  LoadedCheckpoint loaded;
  for (const auto &[key, value] : ParseKeyValues(need("config").text)) {
    if (!SetConfigValue(&loaded.config, key, value)) {
      throw ParseError("checkpoint: unknown config key " + key);
    }
  }

  ModelSpec spec;
  spec.arch = ParseArchitecture(SplitLines(need("model/arch").text).at(0));
  spec.dims = loaded.config.dims();
  spec.seed = loaded.config.seed;
  spec.chars = Vocabulary::FromTokens(SplitLines(need("vocab/chars").text), true);
  auto task_spec = [&](const std::string &task) {
    auto kv = ParseKeyValues(need("task/" + task).text);
    TaskSpec t;
    t.name = kv["name"];
    t.metric = ParseMetric(kv["metric"]);
    t.extra_dim = ParseCount("extra_dim", kv["extra_dim"]);
    t.labels =
        Vocabulary::FromTokens(SplitLines(need("vocab/tags/" + task).text), false);
    return t;
  };
  spec.target = task_spec("target");
  if (records.count("task/source")) spec.source = task_spec("source");
  for (const auto &[name, rec] : records) {
    if (name.rfind("vocab/words/", 0) == 0) {
      spec.words.emplace(name.substr(12),
                         Vocabulary::FromTokens(SplitLines(rec.text), true));
    }
  }
  for (const std::string &line : SplitLines(need("mapping/output").text)) {
    size_t tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError("checkpoint: bad mapping line");
    spec.output_mapping.pairs[line.substr(0, tab)] = line.substr(tab + 1);
  }

  loaded.model = JointModel::Build(std::move(spec));
  for (const auto &[name, e] : loaded.model->registry().entries()) {
    const Record &rec = need("param/" + name);
    if (rec.kind != kTensor || rec.scope != e.scope ||
        !rec.tensor.SameShape(e.param->value)) {
      throw ParseError("checkpoint: parameter " + name +
                       " does not match the model layout");
    }
    e.param->value = rec.tensor;
  }
  size_t stored = 0;
  for (const auto &[name, rec] : records) {
    if (name.rfind("param/", 0) == 0) ++stored;
  }
  if (stored != loaded.model->registry().entries().size()) {
    throw ParseError("checkpoint: stored parameters do not match the model");
  }
  return loaded;
}

LoadedCheckpoint LoadCheckpointFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return LoadCheckpoint(in);
}

}  // namespace seqtag
