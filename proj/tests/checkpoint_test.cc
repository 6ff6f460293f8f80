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

#include <cstring>
#include <sstream>

#include "gtest/gtest.h"
#include "seqtag/checkpoint.h"
#include "seqtag/error.h"
#include "support/model_fixture.h"

namespace seqtag {
namespace {

using testing::MakeToyModel;
using testing::ToyModel;
using testing::ToyModelOptions;

std::string Save(const JointModel &m, const TrainConfig &c) {
  std::ostringstream out;
  SaveCheckpoint(m, c, out);
  return out.str();
}

LoadedCheckpoint Load(const std::string &bytes) {
  std::istringstream in(bytes);
  return LoadCheckpoint(in);
}

ToyModel Perturbed(Architecture arch, size_t extra = 0) {
  ToyModelOptions o;
  o.arch = arch;
  o.target_extra_dim = extra;
  ToyModel t = MakeToyModel(o);
  Rng rng(5);
  for (const auto &[name, e] : t.model->registry().entries()) {
    for (double &v : e.param->value.values()) v += rng.Uniform(-1e-3, 1e-3);
  }
  return t;
}

TEST(CheckpointTest, ResaveIsByteIdentical) {
  for (Architecture arch : {Architecture::kNone, Architecture::kTA,
                            Architecture::kTB, Architecture::kTC}) {
    ToyModel t = Perturbed(arch, 2);
    TrainConfig c;
    c.seed = 99;
    c.learning_rate = 0.1 / 3.0;
    std::string first = Save(*t.model, c);
    LoadedCheckpoint loaded = Load(first);
    EXPECT_EQ(Save(*loaded.model, loaded.config), first) << ArchitectureName(arch);
  }
}

TEST(CheckpointTest, ValuesScopesAndConfigPreserved) {
  ToyModel t = Perturbed(Architecture::kTC);
  TrainConfig c;
  c.source_prob = 0.123456789012345678;
  c.fine_tune_embeddings = false;
  c.clip_norm = 5.0;
  LoadedCheckpoint loaded = Load(Save(*t.model, c));
  EXPECT_EQ(loaded.model->arch(), Architecture::kTC);
  EXPECT_EQ(loaded.config.source_prob, c.source_prob);
  EXPECT_FALSE(loaded.config.fine_tune_embeddings);
  EXPECT_EQ(loaded.config.clip_norm, 5.0);
  const auto &a = t.model->registry().entries();
  const auto &b = loaded.model->registry().entries();
  ASSERT_EQ(a.size(), b.size());
  for (const auto &[name, e] : a) {
    auto it = b.find(name);
    ASSERT_NE(it, b.end()) << name;
    EXPECT_EQ(it->second.scope, e.scope) << name;
    ASSERT_EQ(it->second.param->value.shape(), e.param->value.shape()) << name;
    EXPECT_EQ(std::memcmp(it->second.param->value.data(), e.param->value.data(),
                          e.param->value.size() * sizeof(double)),
              0)
        << name;
  }
  EXPECT_EQ(loaded.model->spec().chars.tokens(), t.model->spec().chars.tokens());
  EXPECT_EQ(loaded.model->target().labels().tokens(),
            t.model->target().labels().tokens());
  EXPECT_EQ(loaded.model->source().words->tokens(),
            t.model->source().words->tokens());
}

TEST(CheckpointTest, LoadedViewsStillAlias) {
  ToyModel t = Perturbed(Architecture::kTB);
  LoadedCheckpoint loaded = Load(Save(*t.model, {}));
  EXPECT_EQ(loaded.model->source().encoder.word_stack.layers[0].forward.w_rx.get(),
            loaded.model->target().encoder.word_stack.layers[0].forward.w_rx.get());
}

TEST(CheckpointTest, HeaderLayout) {
  ToyModel t = Perturbed(Architecture::kNone);
  std::string bytes = Save(*t.model, {});
  ASSERT_GT(bytes.size(), 16u);
  EXPECT_EQ(bytes.substr(0, 8), "SEQTAGCK");
  uint32_t version;
  std::memcpy(&version, bytes.data() + 8, 4);
  EXPECT_EQ(version, 1u);
}

TEST(CheckpointTest, RejectsCorruptInput) {
  ToyModel t = Perturbed(Architecture::kNone);
  std::string bytes = Save(*t.model, {});
  auto kind = [](const std::string &b) {
    try {
      Load(b);
    } catch (const Error &e) {
      return e.kind();
    }
    return ErrorKind::kDomain;
  };
  std::string bad_magic = bytes;
  bad_magic[0] = 'X';
  EXPECT_EQ(kind(bad_magic), ErrorKind::kParse);
  std::string bad_version = bytes;
  bad_version[8] = 7;
  EXPECT_EQ(kind(bad_version), ErrorKind::kParse);
  EXPECT_EQ(kind(bytes.substr(0, bytes.size() / 2)), ErrorKind::kParse);
  EXPECT_EQ(kind(bytes + "x"), ErrorKind::kParse);
  EXPECT_EQ(kind(""), ErrorKind::kParse);
}

TEST(CheckpointTest, MissingFileIsIoError) {
  try {
    LoadCheckpointFile("/nonexistent/model.ck");
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::kIo);
  }
}

TEST(ConfigTextTest, RoundTripsEveryField) {
  TrainConfig c;
  c.char_emb_dim = 7;
  c.word_hidden = 11;
  c.learning_rate = 0.1 / 7.0;
  c.seed = 18446744073709551615ULL;
  c.lowercase_words = true;
  c.check_isolation = true;
  std::string text = ConfigToText(c);
  TrainConfig d;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    size_t eq = line.find(" = ");
    ASSERT_NE(eq, std::string::npos) << line;
    ASSERT_TRUE(SetConfigValue(&d, line.substr(0, eq), line.substr(eq + 3)));
  }
  EXPECT_EQ(ConfigToText(d), text);
  EXPECT_EQ(d.learning_rate, c.learning_rate);
  EXPECT_EQ(d.seed, c.seed);
}

TEST(ConfigTextTest, BadValues) {
  TrainConfig c;
  EXPECT_FALSE(SetConfigValue(&c, "no_such_key", "1"));
  EXPECT_THROW(SetConfigValue(&c, "batch_size", "many"), Error);
  EXPECT_THROW(SetConfigValue(&c, "learning_rate", "fast"), Error);
  EXPECT_THROW(SetConfigValue(&c, "lowercase_words", "maybe"), Error);
}

}  // namespace
}  // namespace seqtag
