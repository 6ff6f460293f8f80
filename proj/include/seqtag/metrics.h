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

#ifndef SEQTAG_METRICS_H_
#define SEQTAG_METRICS_H_

#include <map>
#include <string>
#include <vector>

namespace seqtag {

using TagSequence = std::vector<std::string>;

// A labeled span [begin, end], both inclusive.
struct Chunk {
  std::string type;
  size_t begin = 0;
  size_t end = 0;

  friend bool operator==(const Chunk &, const Chunk &) = default;
  friend auto operator<=>(const Chunk &, const Chunk &) = default;
};

// Extracts BIO chunks the way conlleval does: a chunk of type X opens at B-X,
// or at I-X when the previous tag is not B-X or I-X; it extends over
// following I-X tags. Throws on tags other than O, B-X and I-X.
std::vector<Chunk> ExtractChunks(const TagSequence &tags);

struct ChunkCounts {
  size_t correct = 0;
  size_t predicted = 0;
  size_t gold = 0;
};

struct ChunkScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  ChunkCounts counts;
  // Set when neither side contains a chunk; all scores are then 0.
  bool zero_chunks = false;
  std::map<std::string, ChunkCounts> per_type;
};

// Chunk-level precision, recall and F1 over a corpus. Sequences must pair up
// with equal lengths.
ChunkScore ChunkF1(const std::vector<TagSequence> &gold,
                   const std::vector<TagSequence> &predicted);

// Precision/recall/F1 from counts with 0 for empty denominators.
void ScoreCounts(const ChunkCounts &c, double *precision, double *recall,
                 double *f1);

// Fraction of positions where the tags agree.
double TokenAccuracy(const std::vector<std::vector<size_t>> &gold,
                     const std::vector<std::vector<size_t>> &predicted);

}  // namespace seqtag

#endif  // SEQTAG_METRICS_H_
