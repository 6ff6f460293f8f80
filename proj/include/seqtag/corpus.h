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

#ifndef SEQTAG_CORPUS_H_
#define SEQTAG_CORPUS_H_

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "seqtag/encoder.h"
#include "seqtag/rng.h"
#include "seqtag/sentence.h"
#include "seqtag/vocabulary.h"

namespace seqtag {

// One sentence as read from a column file. `lines` keeps the original token
// lines so that files can be written back unchanged or annotated.
struct RawSentence {
  std::vector<std::string> tokens;
  std::vector<std::string> tags;
  std::vector<std::string> lines;

  size_t size() const { return tokens.size(); }
};

struct ConllColumns {
  size_t token_col = 0;
  // Index of the tag column; -1 selects the last column.
  int tag_col = -1;
  // When false, lines without a tag column are accepted and tags are empty.
  bool require_tags = true;
};

// Reads a CoNLL-style column file: whitespace-separated columns, one token
// per line, blank lines between sentences, -DOCSTART- lines skipped.
std::vector<RawSentence> ReadConll(const std::string &path,
                                   const ConllColumns &columns = {});
std::vector<RawSentence> ParseConll(std::istream &in,
                                    const ConllColumns &columns = {},
                                    const std::string &source = "<stream>");

// Writes the original lines back, each sentence followed by a blank line.
void WriteConll(std::ostream &out, const std::vector<RawSentence> &sentences);
void WriteConllFile(const std::string &path,
                    const std::vector<RawSentence> &sentences);

// Appends one column to every token line, reusing the line's separator.
std::string AnnotateLine(const std::string &line, const std::string &column);

// Per-token numeric vectors in the same sentence/blank-line layout as the
// corpus; values on a line are tab separated.
using ExtraFeatures = std::vector<std::vector<Vec>>;
ExtraFeatures ReadExtraFeatures(const std::string &path);
ExtraFeatures ParseExtraFeatures(std::istream &in,
                                 const std::string &source = "<stream>");

// Indices of round(rate * n) items chosen uniformly without replacement,
// in increasing order. Rate must lie in (0, 1].
std::vector<size_t> SubsampleIndices(size_t n, double rate, Rng &rng);

template <typename T>
std::vector<T> Subsample(const std::vector<T> &items, double rate, Rng &rng) {
  std::vector<T> out;
  for (size_t i : SubsampleIndices(items.size(), rate, rng)) {
    out.push_back(items[i]);
  }
  return out;
}

struct SplitSizes {
  size_t train = 0, dev = 0, test = 0;
};
// 80/10/10 with dev and test rounded and the remainder assigned to train.
SplitSizes SplitCounts(size_t n);

struct CorpusSplit {
  std::vector<RawSentence> train, dev, test;
};
// Seeded random split; each part keeps the original sentence order.
CorpusSplit SplitCorpus(const std::vector<RawSentence> &sentences, Rng &rng);

struct EmbeddingReport {
  size_t entries = 0;  // records in the file
  size_t matched = 0;  // records whose word is in the vocabulary
  double coverage = 0.0;  // matched / entries, 0 for an empty file
};

// Copies pretrained vectors ("word v_1 ... v_dim" per line) into the rows of
// in-vocabulary words. A leading "count dim" header line is skipped. The
// first record for a word wins.
EmbeddingReport LoadEmbeddings(const std::string &path, const Vocabulary &vocab,
                               const EmbeddingTable &table,
                               bool lowercase = false);
EmbeddingReport ParseEmbeddings(std::istream &in, const Vocabulary &vocab,
                                const EmbeddingTable &table, bool lowercase,
                                const std::string &source = "<stream>");

struct VocabularyOptions {
  size_t min_count = 1;
  bool lowercase = false;
};

// Word vocabulary from token counts over the given training sets.
Vocabulary BuildWordVocabulary(
    const std::vector<const std::vector<RawSentence> *> &sets,
    const VocabularyOptions &options);
// Character vocabulary; all characters are kept.
Vocabulary BuildCharVocabulary(
    const std::vector<const std::vector<RawSentence> *> &sets);
// Tag vocabulary over every labeled split supplied.
Vocabulary BuildTagVocabulary(
    const std::vector<const std::vector<RawSentence> *> &sets);

// Converts a raw sentence to indices. Unknown words and characters map to
// the unknown index; unknown tags are an error. Tags are skipped when the raw
// sentence carries none.
Sentence IndexSentence(const RawSentence &raw, const Vocabulary &words,
                       const Vocabulary &chars, const Vocabulary &tags,
                       bool lowercase = false);

}  // namespace seqtag

#endif  // SEQTAG_CORPUS_H_
