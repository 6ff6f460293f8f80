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

#ifndef SEQTAG_VOCABULARY_H_
#define SEQTAG_VOCABULARY_H_

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace seqtag {

// Bijective token <-> index map. Word and character vocabularies reserve
// index 0 for padding and 1 for unknown tokens; tag vocabularies reserve
// nothing.
class Vocabulary {
 public:
  static constexpr size_t kPad = 0;
  static constexpr size_t kUnk = 1;
  static constexpr const char *kPadToken = "<pad>";
  static constexpr const char *kUnkToken = "<unk>";

  explicit Vocabulary(bool with_specials = true);

  // Entries ordered by descending count, ties lexicographically; entries
  // seen fewer than min_count times are dropped. The result is frozen.
  static Vocabulary FromCounts(const std::map<std::string, size_t> &counts,
                               size_t min_count, bool with_specials);
  static Vocabulary FromTokens(const std::vector<std::string> &tokens,
                               bool with_specials);

  // Adds a token (if new) and returns its index. Throws once frozen.
  size_t Add(const std::string &token);

  std::optional<size_t> Find(const std::string &token) const;
  // Index of token, or kUnk when absent. Throws for vocabularies without
  // specials.
  size_t Lookup(const std::string &token) const;
  // Index of token; throws a parse error naming the token when absent.
  size_t Index(const std::string &token) const;

  const std::string &Token(size_t index) const { return tokens_.at(index); }
  const std::vector<std::string> &tokens() const { return tokens_; }
  size_t size() const { return tokens_.size(); }
  bool has_specials() const { return with_specials_; }

  void Freeze() { frozen_ = true; }
  bool frozen() const { return frozen_; }

 private:
  bool with_specials_;
  bool frozen_ = false;
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, size_t> index_;
};

// Splits UTF-8 text into one string per Unicode scalar value. Invalid bytes
// are kept as single-byte units.
std::vector<std::string> SplitCodepoints(const std::string &text);

// ASCII lowercasing.
std::string LowerAscii(std::string text);

}  // namespace seqtag

#endif  // SEQTAG_VOCABULARY_H_
