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

#ifndef SEQTAG_CHECKPOINT_H_
#define SEQTAG_CHECKPOINT_H_

#include <istream>
#include <memory>
#include <ostream>
#include <string>

#include "seqtag/training.h"
#include "seqtag/transfer.h"

namespace seqtag {

// Binary container:
//   magic "SEQTAGCK", u32 version, u32 record count, then records sorted by
//   name. Each record is u32 name length, name bytes, u8 kind, u64 payload
//   length, payload. Text records (kind 0) hold UTF-8. Tensor records
//   (kind 1) hold u8 scope, u32 rank, rank x u64 dims, then the values as
//   little-endian IEEE-754 doubles. All integers are little-endian.
//
// Records: "config", "model/arch", "task/target", "task/source",
// "vocab/chars", "vocab/words/<table>", "vocab/tags/<task>",
// "mapping/output" and one "param/<name>" per registry entry. The CRF stores
// an initial-tag score vector and no final-tag vector.
inline constexpr char kCheckpointMagic[] = "SEQTAGCK";
inline constexpr uint32_t kCheckpointVersion = 1;

void SaveCheckpoint(const JointModel &model, const TrainConfig &config,
                    std::ostream &out);
void SaveCheckpointFile(const JointModel &model, const TrainConfig &config,
                        const std::string &path);

struct LoadedCheckpoint {
  std::unique_ptr<JointModel> model;
  TrainConfig config;
};

LoadedCheckpoint LoadCheckpoint(std::istream &in);
LoadedCheckpoint LoadCheckpointFile(const std::string &path);

// Canonical "key = value" rendering of a config, keys sorted.
std::string ConfigToText(const TrainConfig &config);
// Sets one config field from text; returns false for unknown keys.
bool SetConfigValue(TrainConfig *config, const std::string &key,
                    const std::string &value);

}  // namespace seqtag

#endif  // SEQTAG_CHECKPOINT_H_
