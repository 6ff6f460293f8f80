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

#ifndef SEQTAG_TESTS_SUPPORT_SYNTHETIC_H_
#define SEQTAG_TESTS_SUPPORT_SYNTHETIC_H_

#include <string>
#include <utility>
#include <vector>

#include "seqtag/corpus.h"

namespace seqtag::testing {

// A pair of tagging tasks over the same morphology: every word is a
// four-letter stem plus a suffix, and the suffix alone determines the tag.
// Source and target draw stems from disjoint pools, so the only transferable
// knowledge is the suffix rule. Target tags are the source tags with a
// prefix, which keeps the two tagsets disjoint but mappable.
struct SyntheticPairOptions {
  uint64_t seed = 1;
  size_t source_train = 400;
  size_t source_dev = 50;
  size_t target_train = 400;
  size_t target_dev = 100;
  size_t num_tags = 4;
  size_t suffixes_per_tag = 8;
  size_t stems_per_task = 150;
  size_t min_length = 4;
  size_t max_length = 8;
  std::string target_tag_prefix = "t-";
};

struct SyntheticTask {
  std::vector<RawSentence> train;
  std::vector<RawSentence> dev;
};

struct SyntheticPair {
  SyntheticTask source;
  SyntheticTask target;
  // (target tag, source tag)
  std::vector<std::pair<std::string, std::string>> mapping;
};

SyntheticPair MakeSyntheticPair(const SyntheticPairOptions &options);

// Mapping file text in the default column order: source tag, then target.
std::string MappingText(const SyntheticPair &pair);

// Builds a sentence with "token<TAB>tag" lines.
RawSentence MakeSentence(const std::vector<std::string> &tokens,
                         const std::vector<std::string> &tags);

// A fresh directory under the system temp path, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir &) = delete;
  TempDir &operator=(const TempDir &) = delete;

  const std::string &path() const { return path_; }
  std::string File(const std::string &name) const { return path_ + "/" + name; }

 private:
  std::string path_;
};

void WriteTextFile(const std::string &path, const std::string &text);
std::string ReadTextFile(const std::string &path);

}  // namespace seqtag::testing

#endif  // SEQTAG_TESTS_SUPPORT_SYNTHETIC_H_
