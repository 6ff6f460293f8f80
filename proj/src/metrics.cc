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

#include "seqtag/metrics.h"

#include <set>

#include "seqtag/error.h"

namespace seqtag {

namespace {

// Splits a tag into prefix ('O', 'B' or 'I') and type.
char ParseTag(const std::string &tag, std::string *type, size_t sentence,
              size_t position) {
  if (tag == "O") {
    type->clear();
    return 'O';
  }
  if (tag.size() > 2 && (tag[0] == 'B' || tag[0] == 'I') && tag[1] == '-') {
    *type = tag.substr(2);
    return tag[0];
  }
  throw ParseError("malformed BIO tag '" + tag + "' in sentence " +
                   std::to_string(sentence) + " at position " +
                   std::to_string(position));
}

std::vector<Chunk> Extract(const TagSequence &tags, size_t sentence) {
  std::vector<Chunk> chunks;
  std::string type, prev_type;
  char prev = 'O';
  for (size_t i = 0; i < tags.size(); ++i) {
    char kind = ParseTag(tags[i], &type, sentence, i);
    bool continues = kind == 'I' && prev != 'O' && type == prev_type;
    if (kind == 'B' || (kind == 'I' && !continues)) {
      chunks.push_back({type, i, i});
    } else if (continues) {
      chunks.back().end = i;
    }
    prev = kind;
    prev_type = type;
  }
  return chunks;
}

}  // namespace

std::vector<Chunk> ExtractChunks(const TagSequence &tags) {
  return Extract(tags, 0);
}

void ScoreCounts(const ChunkCounts &c, double *precision, double *recall,
                 double *f1) {
  *precision = c.predicted == 0 ? 0.0
                                : static_cast<double>(c.correct) /
                                      static_cast<double>(c.predicted);
  *recall = c.gold == 0 ? 0.0
                        : static_cast<double>(c.correct) /
                              static_cast<double>(c.gold);
  *f1 = (*precision + *recall) == 0.0
            ? 0.0
            : 2 * *precision * *recall / (*precision + *recall);
}

ChunkScore ChunkF1(const std::vector<TagSequence> &gold,
                   const std::vector<TagSequence> &predicted) {
  if (gold.size() != predicted.size()) {
    throw DomainError("chunk F1: " + std::to_string(gold.size()) +
                      " gold sentences but " +
                      std::to_string(predicted.size()) + " predicted");
  }
  ChunkScore score;
  for (size_t s = 0; s < gold.size(); ++s) {
    if (gold[s].size() != predicted[s].size()) {
      throw DomainError("chunk F1: length mismatch in sentence " +
                        std::to_string(s));
    }
    std::vector<Chunk> g = Extract(gold[s], s);
    std::vector<Chunk> p = Extract(predicted[s], s);
    std::set<Chunk> gold_set(g.begin(), g.end());
    for (const Chunk &c : g) ++score.per_type[c.type].gold;
    for (const Chunk &c : p) {
      ++score.per_type[c.type].predicted;
      if (gold_set.count(c)) ++score.per_type[c.type].correct;
    }
    score.counts.gold += g.size();
    score.counts.predicted += p.size();
  }
  for (const auto &[type, c] : score.per_type) score.counts.correct += c.correct;
  score.zero_chunks = score.counts.gold == 0 && score.counts.predicted == 0;
  ScoreCounts(score.counts, &score.precision, &score.recall, &score.f1);
  return score;
}

double TokenAccuracy(const std::vector<std::vector<size_t>> &gold,
                     const std::vector<std::vector<size_t>> &predicted) {
  if (gold.size() != predicted.size()) {
    throw DomainError("accuracy: sentence count mismatch");
  }
  size_t total = 0, correct = 0;
  for (size_t s = 0; s < gold.size(); ++s) {
    if (gold[s].size() != predicted[s].size()) {
      throw DomainError("accuracy: length mismatch in sentence " +
                        std::to_string(s));
    }
    for (size_t t = 0; t < gold[s].size(); ++t) {
      ++total;
      if (gold[s][t] == predicted[s][t]) ++correct;
    }
  }
  return total == 0 ? 0.0
                    : static_cast<double>(correct) / static_cast<double>(total);
}

}  // namespace seqtag
