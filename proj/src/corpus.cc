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

#include "seqtag/corpus.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "seqtag/error.h"

namespace seqtag {

namespace {

std::vector<std::string> SplitFields(const std::string &line) {
  std::vector<std::string> fields;
  size_t i = 0, n = line.size();
  while (i < n) {
    while (i < n && (line[i] == ' ' || line[i] == '\t')) ++i;
    size_t start = i;
    while (i < n && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

void StripCarriageReturn(std::string *line) {
  if (!line->empty() && line->back() == '\r') line->pop_back();
}

std::string Where(const std::string &source, size_t line_no) {
  return source + ":" + std::to_string(line_no);
}

double ParseNumber(const std::string &field, const std::string &where) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size() ||
      !std::isfinite(v)) {
    throw ParseError(where + ": invalid number '" + field + "'");
  }
  return v;
}

}  // namespace

std::vector<RawSentence> ParseConll(std::istream &in,
                                    const ConllColumns &columns,
                                    const std::string &source) {
  std::vector<RawSentence> out;
  RawSentence current;
  std::string line;
  size_t line_no = 0;
  auto flush = [&]() {
    if (!current.tokens.empty()) out.push_back(std::move(current));
    current = RawSentence();
  };
  while (std::getline(in, line)) {
    ++line_no;
    StripCarriageReturn(&line);
    std::vector<std::string> fields = SplitFields(line);
    if (fields.empty()) {
      flush();
      continue;
    }
    if (fields[0] == "-DOCSTART-") continue;
    if (columns.token_col >= fields.size()) {
      throw ParseError(Where(source, line_no) + ": missing token column " +
                       std::to_string(columns.token_col));
    }
    size_t tag_col = columns.tag_col < 0
                         ? fields.size() - 1
                         : static_cast<size_t>(columns.tag_col);
    bool has_tag = columns.tag_col < 0
                       ? fields.size() > columns.token_col + 1
                       : tag_col < fields.size();
    if (!has_tag && columns.require_tags) {
      throw ParseError(Where(source, line_no) + ": missing tag column");
    }
    current.tokens.push_back(fields[columns.token_col]);
    if (has_tag) current.tags.push_back(fields[tag_col]);
    current.lines.push_back(line);
  }
  flush();
  for (size_t i = 0; i < out.size(); ++i) {
    // A sentence mixing tagged and untagged lines is ragged.
    if (!out[i].tags.empty() && out[i].tags.size() != out[i].tokens.size()) {
      throw ParseError(source + ": sentence " + std::to_string(i + 1) +
                       " has lines without a tag column");
    }
  }
  return out;
}

std::vector<RawSentence> ReadConll(const std::string &path,
                                   const ConllColumns &columns) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return ParseConll(in, columns, path);
}

void WriteConll(std::ostream &out, const std::vector<RawSentence> &sentences) {
  for (const RawSentence &s : sentences) {
    for (const std::string &line : s.lines) out << line << '\n';
    out << '\n';
  }
}

void WriteConllFile(const std::string &path,
                    const std::vector<RawSentence> &sentences) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  WriteConll(out, sentences);
  if (!out) throw IoError("error writing " + path);
}

std::string AnnotateLine(const std::string &line, const std::string &column) {
  char sep = line.find('\t') != std::string::npos ? '\t' : ' ';
  return line + sep + column;
}

ExtraFeatures ParseExtraFeatures(std::istream &in, const std::string &source) {
  ExtraFeatures out;
  std::vector<Vec> current;
  std::string line;
  size_t line_no = 0, width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    StripCarriageReturn(&line);
    std::vector<std::string> fields = SplitFields(line);
    if (fields.empty()) {
      if (!current.empty()) out.push_back(std::move(current));
      current.clear();
      continue;
    }
    if (width == 0) width = fields.size();
    if (fields.size() != width) {
      throw ParseError(Where(source, line_no) + ": expected " +
                       std::to_string(width) + " feature values, got " +
                       std::to_string(fields.size()));
    }
    Vec v;
    for (const auto &f : fields) v.push_back(ParseNumber(f, Where(source, line_no)));
    current.push_back(std::move(v));
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

ExtraFeatures ReadExtraFeatures(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return ParseExtraFeatures(in, path);
}

std::vector<size_t> SubsampleIndices(size_t n, double rate, Rng &rng) {
  if (!(rate > 0.0 && rate <= 1.0)) {
    throw ConfigError("labeling rate must lie in (0, 1], got " +
                      std::to_string(rate));
  }
  size_t keep = static_cast<size_t>(std::llround(rate * static_cast<double>(n)));
  std::vector<size_t> idx(n);
  for (size_t i = 0; i < n; ++i) idx[i] = i;
  // Partial Fisher-Yates: the first `keep` slots become the sample.
  for (size_t i = 0; i < keep; ++i) {
    size_t j = i + rng.UniformInt(n - i);
    std::swap(idx[i], idx[j]);
  }
  idx.resize(keep);
  std::sort(idx.begin(), idx.end());
  return idx;
}

SplitSizes SplitCounts(size_t n) {
  SplitSizes s;
  s.dev = static_cast<size_t>(std::llround(0.1 * static_cast<double>(n)));
  s.test = s.dev;
  s.train = n - s.dev - s.test;
  return s;
}

CorpusSplit SplitCorpus(const std::vector<RawSentence> &sentences, Rng &rng) {
  SplitSizes sizes = SplitCounts(sentences.size());
  std::vector<size_t> order(sentences.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  rng.Shuffle(&order);
  auto take = [&](size_t begin, size_t count) {
    std::vector<size_t> part(order.begin() + begin,
                             order.begin() + begin + count);
    std::sort(part.begin(), part.end());
    std::vector<RawSentence> out;
    for (size_t i : part) out.push_back(sentences[i]);
    return out;
  };
  CorpusSplit split;
  split.test = take(0, sizes.test);
  split.dev = take(sizes.test, sizes.dev);
  split.train = take(sizes.test + sizes.dev, sizes.train);
  return split;
}

EmbeddingReport ParseEmbeddings(std::istream &in, const Vocabulary &vocab,
                                const EmbeddingTable &table, bool lowercase,
                                const std::string &source) {
  EmbeddingReport report;
  size_t dim = table.dim();
  std::vector<bool> seen(vocab.size(), false);
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    StripCarriageReturn(&line);
    std::vector<std::string> fields = SplitFields(line);
    if (fields.empty()) continue;
    if (line_no == 1 && fields.size() == 2 &&
        std::all_of(fields.begin(), fields.end(), [](const std::string &f) {
          return !f.empty() && std::all_of(f.begin(), f.end(), ::isdigit);
        })) {
      continue;
    }
    if (fields.size() != dim + 1) {
      throw ParseError(Where(source, line_no) + ": expected " +
                       std::to_string(dim) + " values, got " +
                       std::to_string(fields.size() - 1));
    }
    ++report.entries;
    std::string word = lowercase ? LowerAscii(fields[0]) : fields[0];
    auto id = vocab.Find(word);
    Vec values(dim);
    for (size_t i = 0; i < dim; ++i) {
      values[i] = ParseNumber(fields[i + 1], Where(source, line_no));
    }
    if (!id || (vocab.has_specials() && *id < 2)) continue;
    ++report.matched;
    if (seen[*id]) continue;
    seen[*id] = true;
    auto row = table.weights->value.row(*id);
    std::copy(values.begin(), values.end(), row.begin());
  }
  report.coverage = report.entries == 0
                        ? 0.0
                        : static_cast<double>(report.matched) /
                              static_cast<double>(report.entries);
  return report;
}

EmbeddingReport LoadEmbeddings(const std::string &path, const Vocabulary &vocab,
                               const EmbeddingTable &table, bool lowercase) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return ParseEmbeddings(in, vocab, table, lowercase, path);
}

Vocabulary BuildWordVocabulary(
    const std::vector<const std::vector<RawSentence> *> &sets,
    const VocabularyOptions &options) {
  std::map<std::string, size_t> counts;
  for (const auto *set : sets) {
    for (const RawSentence &s : *set) {
      for (const std::string &t : s.tokens) {
        ++counts[options.lowercase ? LowerAscii(t) : t];
      }
    }
  }
  return Vocabulary::FromCounts(counts, options.min_count, true);
}

Vocabulary BuildCharVocabulary(
    const std::vector<const std::vector<RawSentence> *> &sets) {
  std::map<std::string, size_t> counts;
  for (const auto *set : sets) {
    for (const RawSentence &s : *set) {
      for (const std::string &t : s.tokens) {
        for (const std::string &c : SplitCodepoints(t)) ++counts[c];
      }
    }
  }
  return Vocabulary::FromCounts(counts, 1, true);
}

Vocabulary BuildTagVocabulary(
    const std::vector<const std::vector<RawSentence> *> &sets) {
  std::map<std::string, size_t> counts;
  for (const auto *set : sets) {
    for (const RawSentence &s : *set) {
      for (const std::string &t : s.tags) ++counts[t];
    }
  }
  return Vocabulary::FromCounts(counts, 1, false);
}

Sentence IndexSentence(const RawSentence &raw, const Vocabulary &words,
                       const Vocabulary &chars, const Vocabulary &tags,
                       bool lowercase) {
  Sentence s;
  s.tokens = raw.tokens;
  for (const std::string &t : raw.tokens) {
    if (t.empty()) throw ParseError("empty token");
    s.word_ids.push_back(words.Lookup(lowercase ? LowerAscii(t) : t));
    std::vector<size_t> ids;
    for (const std::string &c : SplitCodepoints(t)) ids.push_back(chars.Lookup(c));
    s.char_ids.push_back(std::move(ids));
  }
  for (const std::string &t : raw.tags) s.tag_ids.push_back(tags.Index(t));
  return s;
}

}  // namespace seqtag
