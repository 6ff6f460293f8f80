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

#ifndef SEQTAG_SENTENCE_H_
#define SEQTAG_SENTENCE_H_

#include <string>
#include <vector>

namespace seqtag {

// A tokenized, indexed sentence. tokens, word_ids, char_ids and tag_ids are
// parallel; extra_features is either empty or has one vector per token.
struct Sentence {
  std::vector<std::string> tokens;
  std::vector<std::vector<size_t>> char_ids;
  std::vector<size_t> word_ids;
  std::vector<size_t> tag_ids;
  std::vector<std::vector<double>> extra_features;

  size_t size() const { return tokens.size(); }
};

}  // namespace seqtag

#endif  // SEQTAG_SENTENCE_H_
