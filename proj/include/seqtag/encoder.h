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

#ifndef SEQTAG_ENCODER_H_
#define SEQTAG_ENCODER_H_

#include <array>
#include <span>
#include <vector>

#include "seqtag/parameter.h"
#include "seqtag/sentence.h"

namespace seqtag {

using Vec = std::vector<double>;

// Lookup table of dense vectors, [vocab_size x dim].
struct EmbeddingTable {
  ParamRef weights;
  size_t pad_index = 0;
  size_t unk_index = 1;

  static EmbeddingTable Create(size_t vocab_size, size_t dim);

  size_t vocab_size() const { return weights->value.rows(); }
  size_t dim() const { return weights->value.cols(); }

  std::span<const double> Lookup(size_t index) const;
  void AccumulateGrad(size_t index, std::span<const double> d) const;
};

// Gate weights of one GRU cell. No bias terms:
//   r = sigmoid(W_rx x + W_rh h_prev)
//   z = sigmoid(W_zx x + W_zh h_prev)
//   c = tanh(W_hx x + W_hh (r * h_prev))
//   h = z * h_prev + (1 - z) * c
struct GruCell {
  ParamRef w_rx, w_rh, w_zx, w_zh, w_hx, w_hh;

  static GruCell Create(size_t input_dim, size_t hidden_dim);

  size_t input_dim() const { return w_rx->value.cols(); }
  size_t hidden_dim() const { return w_rh->value.rows(); }

  std::array<ParamRef, 6> params() const {
    return {w_rx, w_rh, w_zx, w_zh, w_hx, w_hh};
  }
  std::array<ParamRef *, 6> mutable_params() {
    return {&w_rx, &w_rh, &w_zx, &w_zh, &w_hx, &w_hh};
  }
};

// Intermediate values of one GRU step, kept for the backward pass.
struct GruStepCache {
  Vec x, h_prev, r, z, cand, h;
};

Vec GruStep(const GruCell &cell, std::span<const double> x,
            std::span<const double> h_prev, GruStepCache *cache = nullptr);

// Accumulates parameter gradients into the cell and adds the input and
// previous-state gradients into dx and dh_prev.
void GruStepBackward(const GruCell &cell, const GruStepCache &cache,
                     std::span<const double> dh, std::span<double> dx,
                     std::span<double> dh_prev);

struct BiGruLayer {
  GruCell forward;
  GruCell backward;
};

// Two stacked bidirectional GRU layers. Layer 2 reads the concatenated
// [forward; backward] states of layer 1.
struct BiGruStack {
  std::array<BiGruLayer, 2> layers;

  static BiGruStack Create(size_t input_dim, size_t hidden_dim);

  size_t input_dim() const { return layers[0].forward.input_dim(); }
  size_t hidden_dim() const { return layers[0].forward.hidden_dim(); }
  size_t output_dim() const { return 2 * hidden_dim(); }

  std::vector<ParamRef> params() const;
};

// Step caches indexed [layer][direction][position]; direction 0 runs left to
// right, direction 1 right to left.
struct BiGruTrace {
  std::array<std::array<std::vector<GruStepCache>, 2>, 2> steps;
};

// Runs the stack from zero initial states and returns one 2*hidden output
// per position.
std::vector<Vec> BiGruForward(const BiGruStack &stack,
                              const std::vector<Vec> &inputs,
                              BiGruTrace *trace = nullptr);

// Back-propagates output gradients through the recorded trace, accumulating
// into the stack's parameters. Returns the input gradients.
std::vector<Vec> BiGruBackward(const BiGruStack &stack, const BiGruTrace &trace,
                               const std::vector<Vec> &d_outputs);

struct WordCharTrace {
  std::vector<size_t> chars;
  BiGruTrace gru;
};

// Character-level word representation: the final forward state and the final
// backward state of the top layer, concatenated.
Vec EncodeWordChars(const EmbeddingTable &char_table,
                    const BiGruStack &char_stack,
                    std::span<const size_t> chars,
                    WordCharTrace *trace = nullptr);

void EncodeWordCharsBackward(const EmbeddingTable &char_table,
                             const BiGruStack &char_stack,
                             const WordCharTrace &trace,
                             std::span<const double> d_rep);

// Full hierarchical encoder. Each token's word-level input is
// [char representation; word embedding].
struct SentenceEncoder {
  EmbeddingTable chars;
  BiGruStack char_stack;
  EmbeddingTable words;
  BiGruStack word_stack;

  size_t output_dim() const { return word_stack.output_dim(); }
  std::vector<ParamRef> params() const;
};

struct SentenceTrace {
  std::vector<WordCharTrace> words;
  std::vector<size_t> word_ids;
  BiGruTrace gru;
};

std::vector<Vec> EncodeSentence(const SentenceEncoder &encoder,
                                const Sentence &sentence,
                                SentenceTrace *trace = nullptr);

void EncodeSentenceBackward(const SentenceEncoder &encoder,
                            const SentenceTrace &trace,
                            const std::vector<Vec> &d_outputs);

}  // namespace seqtag

#endif  // SEQTAG_ENCODER_H_
