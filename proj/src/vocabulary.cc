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

#include "seqtag/vocabulary.h"

#include <algorithm>

#include "seqtag/error.h"

namespace seqtag {

Vocabulary::Vocabulary(bool with_specials) : with_specials_(with_specials) {
  if (with_specials_) {
    Add(kPadToken);
    Add(kUnkToken);
  }
}

Vocabulary Vocabulary::FromCounts(const std::map<std::string, size_t> &counts,
                                  size_t min_count, bool with_specials) {
  std::vector<std::pair<std::string, size_t>> entries;
  for (const auto &[token, n] : counts) {
    if (n >= min_count) entries.emplace_back(token, n);
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const auto &a, const auto &b) {
                     if (a.second != b.second) return a.second > b.second;
                     return a.first < b.first;
                   });
  Vocabulary vocab(with_specials);
  for (const auto &e : entries) vocab.Add(e.first);
  vocab.Freeze();
  return vocab;
}

Vocabulary Vocabulary::FromTokens(const std::vector<std::string> &tokens,
                                  bool with_specials) {
  Vocabulary vocab(false);
  vocab.with_specials_ = with_specials;
  for (const auto &t : tokens) vocab.Add(t);
  if (with_specials &&
      (vocab.size() < 2 || vocab.Token(kPad) != kPadToken ||
       vocab.Token(kUnk) != kUnkToken)) {
    throw ParseError("vocabulary with specials must start with " +
                     std::string(kPadToken) + " and " + kUnkToken);
  }
  vocab.Freeze();
  return vocab;
}

size_t Vocabulary::Add(const std::string &token) {
  auto it = index_.find(token);
  if (it != index_.end()) return it->second;
  if (frozen_) throw DomainError("cannot add '" + token + "' to a frozen vocabulary");
  size_t id = tokens_.size();
  tokens_.push_back(token);
  index_.emplace(token, id);
  return id;
}

std::optional<size_t> Vocabulary::Find(const std::string &token) const {
  auto it = index_.find(token);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

size_t Vocabulary::Lookup(const std::string &token) const {
  if (auto id = Find(token)) return *id;
  if (!with_specials_) throw ParseError("unknown label '" + token + "'");
  return kUnk;
}

size_t Vocabulary::Index(const std::string &token) const {
  if (auto id = Find(token)) return *id;
  throw ParseError("unknown label '" + token + "'");
}

std::vector<std::string> SplitCodepoints(const std::string &text) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < text.size()) {
    unsigned char c = text[i];
    size_t len = 1;
    if (c >= 0xf0 && c <= 0xf4) {
      len = 4;
    } else if (c >= 0xe0) {
      len = 3;
    } else if (c >= 0xc2 && c <= 0xdf) {
      len = 2;
    }
    if (c >= 0xf5 || (c >= 0x80 && c < 0xc2)) len = 1;
    if (i + len > text.size()) len = 1;
    for (size_t k = 1; k < len; ++k) {
      if ((static_cast<unsigned char>(text[i + k]) & 0xc0) != 0x80) {
        len = 1;
        break;
      }
    }
    out.push_back(text.substr(i, len));
    i += len;
  }
  return out;
}

std::string LowerAscii(std::string text) {
  for (char &c : text) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return text;
}

}  // namespace seqtag
