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

#include "seqtag/encoder.h"

#include <cmath>
#include <string>

#include "seqtag/error.h"
#include "seqtag/ops.h"

namespace seqtag {

void GlorotUniform(Tensor *t, Rng &rng) {
  double fan_out = static_cast<double>(t->rows());
  double fan_in = t->rank() >= 2 ? static_cast<double>(t->cols()) : 1.0;
  double bound = std::sqrt(6.0 / (fan_in + fan_out));
  for (double &v : t->values()) v = rng.Uniform(-bound, bound);
}

// --- EmbeddingTable ---------------------------------------------------------

EmbeddingTable EmbeddingTable::Create(size_t vocab_size, size_t dim) {
  EmbeddingTable table;
  table.weights = MakeParameter({vocab_size, dim});
  return table;
}

std::span<const double> EmbeddingTable::Lookup(size_t index) const {
  if (index >= vocab_size()) {
    throw DomainError("embedding index " + std::to_string(index) +
                      " out of range for vocabulary of " +
                      std::to_string(vocab_size()));
  }
  return weights->value.row(index);
}

void EmbeddingTable::AccumulateGrad(size_t index,
                                    std::span<const double> d) const {
  auto row = weights->grad.row(index);
  for (size_t i = 0; i < row.size(); ++i) row[i] += d[i];
}

// --- GRU cell ---------------------------------------------------------------

GruCell GruCell::Create(size_t input_dim, size_t hidden_dim) {
  if (input_dim == 0 || hidden_dim == 0) {
    throw DimensionError("GRU dimensions must be positive");
  }
  GruCell cell;
  cell.w_rx = MakeParameter({hidden_dim, input_dim});
  cell.w_zx = MakeParameter({hidden_dim, input_dim});
  cell.w_hx = MakeParameter({hidden_dim, input_dim});
  cell.w_rh = MakeParameter({hidden_dim, hidden_dim});
  cell.w_zh = MakeParameter({hidden_dim, hidden_dim});
  cell.w_hh = MakeParameter({hidden_dim, hidden_dim});
  return cell;
}

namespace {

void CheckCell(const GruCell &cell, size_t x_size, size_t h_size) {
  size_t in = cell.input_dim(), hid = cell.hidden_dim();
  auto check = [&](const ParamRef &w, const char *name, size_t cols) {
    if (w->value.rank() != 2 || w->value.rows() != hid ||
        w->value.cols() != cols) {
      throw DimensionError(std::string("GRU matrix ") + name + " has shape " +
                           w->value.ShapeString() + ", expected [" +
                           std::to_string(hid) + "x" + std::to_string(cols) +
                           "]");
    }
  };
  check(cell.w_rx, "W_rx", in);
  check(cell.w_zx, "W_zx", in);
  check(cell.w_hx, "W_hx", in);
  check(cell.w_rh, "W_rh", hid);
  check(cell.w_zh, "W_zh", hid);
  check(cell.w_hh, "W_hh", hid);
  if (x_size != in) {
    throw DimensionError("GRU input of size " + std::to_string(x_size) +
                         " does not match W_rx columns " + std::to_string(in));
  }
  if (h_size != hid) {
    throw DimensionError("GRU previous state of size " +
                         std::to_string(h_size) + " does not match W_rh rows " +
                         std::to_string(hid));
  }
}

}  // namespace

Vec GruStep(const GruCell &cell, std::span<const double> x,
            std::span<const double> h_prev, GruStepCache *cache) {
  CheckCell(cell, x.size(), h_prev.size());
  size_t hid = cell.hidden_dim();

  Vec r(hid, 0.0), z(hid, 0.0), cand(hid, 0.0), h(hid);
  MatVecAdd(cell.w_rx->value, x, r);
  MatVecAdd(cell.w_rh->value, h_prev, r);
  MatVecAdd(cell.w_zx->value, x, z);
  MatVecAdd(cell.w_zh->value, h_prev, z);
  for (size_t i = 0; i < hid; ++i) {
    r[i] = SigmoidScalar(r[i]);
    z[i] = SigmoidScalar(z[i]);
  }
  Vec reset(hid);
  for (size_t i = 0; i < hid; ++i) reset[i] = r[i] * h_prev[i];
  MatVecAdd(cell.w_hx->value, x, cand);
  MatVecAdd(cell.w_hh->value, reset, cand);
  for (size_t i = 0; i < hid; ++i) {
    cand[i] = std::tanh(cand[i]);
    h[i] = z[i] * h_prev[i] + (1 - z[i]) * cand[i];
  }

  if (cache != nullptr) {
    cache->x.assign(x.begin(), x.end());
    cache->h_prev.assign(h_prev.begin(), h_prev.end());
    cache->r = std::move(r);
    cache->z = std::move(z);
    cache->cand = std::move(cand);
    cache->h = h;
  }
  return h;
}

void GruStepBackward(const GruCell &cell, const GruStepCache &cache,
                     std::span<const double> dh, std::span<double> dx,
                     std::span<double> dh_prev) {
  size_t hid = cell.hidden_dim();
  const Vec &hp = cache.h_prev;

  Vec da_z(hid), da_h(hid), reset(hid);
  for (size_t i = 0; i < hid; ++i) {
    double z = cache.z[i], c = cache.cand[i];
    dh_prev[i] += dh[i] * z;
    da_z[i] = dh[i] * (hp[i] - c) * z * (1 - z);
    da_h[i] = dh[i] * (1 - z) * (1 - c * c);
    reset[i] = cache.r[i] * hp[i];
  }

  // Candidate path.
  OuterAdd(da_h, cache.x, &cell.w_hx->grad);
  OuterAdd(da_h, reset, &cell.w_hh->grad);
  MatTVecAdd(cell.w_hx->value, da_h, dx);
  Vec d_reset(hid, 0.0);
  MatTVecAdd(cell.w_hh->value, da_h, d_reset);
  Vec da_r(hid);
  for (size_t i = 0; i < hid; ++i) {
    double r = cache.r[i];
    dh_prev[i] += d_reset[i] * r;
    da_r[i] = d_reset[i] * hp[i] * r * (1 - r);
  }

  // Update gate.
  OuterAdd(da_z, cache.x, &cell.w_zx->grad);
  OuterAdd(da_z, hp, &cell.w_zh->grad);
  MatTVecAdd(cell.w_zx->value, da_z, dx);
  MatTVecAdd(cell.w_zh->value, da_z, dh_prev);

  // Reset gate.
  OuterAdd(da_r, cache.x, &cell.w_rx->grad);
  OuterAdd(da_r, hp, &cell.w_rh->grad);
  MatTVecAdd(cell.w_rx->value, da_r, dx);
  MatTVecAdd(cell.w_rh->value, da_r, dh_prev);
}

// --- Bidirectional stack ----------------------------------------------------

BiGruStack BiGruStack::Create(size_t input_dim, size_t hidden_dim) {
  BiGruStack stack;
  stack.layers[0] = {GruCell::Create(input_dim, hidden_dim),
                     GruCell::Create(input_dim, hidden_dim)};
  stack.layers[1] = {GruCell::Create(2 * hidden_dim, hidden_dim),
                     GruCell::Create(2 * hidden_dim, hidden_dim)};
  return stack;
}

std::vector<ParamRef> BiGruStack::params() const {
  std::vector<ParamRef> out;
  for (const BiGruLayer &layer : layers) {
    for (const GruCell *cell : {&layer.forward, &layer.backward}) {
      for (const ParamRef &p : cell->params()) out.push_back(p);
    }
  }
  return out;
}

namespace {

std::vector<Vec> RunLayer(const BiGruLayer &layer,
                          const std::vector<Vec> &inputs,
                          std::array<std::vector<GruStepCache>, 2> *caches) {
  size_t n = inputs.size();
  size_t hid = layer.forward.hidden_dim();
  std::vector<Vec> out(n, Vec(2 * hid));
  if (caches != nullptr) {
    (*caches)[0].assign(n, {});
    (*caches)[1].assign(n, {});
  }

  Vec h(hid, 0.0);
  for (size_t t = 0; t < n; ++t) {
    h = GruStep(layer.forward, inputs[t], h,
                caches ? &(*caches)[0][t] : nullptr);
    std::copy(h.begin(), h.end(), out[t].begin());
  }
  h.assign(hid, 0.0);
  for (size_t t = n; t-- > 0;) {
    h = GruStep(layer.backward, inputs[t], h,
                caches ? &(*caches)[1][t] : nullptr);
    std::copy(h.begin(), h.end(), out[t].begin() + hid);
  }
  return out;
}

std::vector<Vec> BackpropLayer(
    const BiGruLayer &layer,
    const std::array<std::vector<GruStepCache>, 2> &caches,
    const std::vector<Vec> &d_out) {
  size_t n = d_out.size();
  size_t hid = layer.forward.hidden_dim();
  size_t in = layer.forward.input_dim();
  std::vector<Vec> dx(n, Vec(in, 0.0));

  Vec carry(hid, 0.0), dh(hid), next(hid);
  for (size_t t = n; t-- > 0;) {
    for (size_t i = 0; i < hid; ++i) dh[i] = d_out[t][i] + carry[i];
    std::fill(next.begin(), next.end(), 0.0);
    GruStepBackward(layer.forward, caches[0][t], dh, dx[t], next);
    carry.swap(next);
  }
  std::fill(carry.begin(), carry.end(), 0.0);
  for (size_t t = 0; t < n; ++t) {
    for (size_t i = 0; i < hid; ++i) dh[i] = d_out[t][hid + i] + carry[i];
    std::fill(next.begin(), next.end(), 0.0);
    GruStepBackward(layer.backward, caches[1][t], dh, dx[t], next);
    carry.swap(next);
  }
  return dx;
}

}  // namespace

std::vector<Vec> BiGruForward(const BiGruStack &stack,
                              const std::vector<Vec> &inputs,
                              BiGruTrace *trace) {
  if (inputs.empty()) throw DomainError("BiGRU over an empty sequence");
  std::vector<Vec> mid =
      RunLayer(stack.layers[0], inputs, trace ? &trace->steps[0] : nullptr);
  return RunLayer(stack.layers[1], mid, trace ? &trace->steps[1] : nullptr);
}

std::vector<Vec> BiGruBackward(const BiGruStack &stack, const BiGruTrace &trace,
                               const std::vector<Vec> &d_outputs) {
  std::vector<Vec> d_mid =
      BackpropLayer(stack.layers[1], trace.steps[1], d_outputs);
  return BackpropLayer(stack.layers[0], trace.steps[0], d_mid);
}

// --- Character-level word representation ------------------------------------

Vec EncodeWordChars(const EmbeddingTable &char_table,
                    const BiGruStack &char_stack,
                    std::span<const size_t> chars, WordCharTrace *trace) {
  if (chars.empty()) throw DomainError("word with no characters");
  std::vector<Vec> xs;
  xs.reserve(chars.size());
  for (size_t c : chars) {
    auto row = char_table.Lookup(c);
    xs.emplace_back(row.begin(), row.end());
  }
  std::vector<Vec> out =
      BiGruForward(char_stack, xs, trace ? &trace->gru : nullptr);
  if (trace != nullptr) trace->chars.assign(chars.begin(), chars.end());

  size_t hid = char_stack.hidden_dim();
  Vec rep(2 * hid);
  std::copy(out.back().begin(), out.back().begin() + hid, rep.begin());
  std::copy(out.front().begin() + hid, out.front().end(), rep.begin() + hid);
  return rep;
}

void EncodeWordCharsBackward(const EmbeddingTable &char_table,
                             const BiGruStack &char_stack,
                             const WordCharTrace &trace,
                             std::span<const double> d_rep) {
  size_t n = trace.chars.size();
  size_t hid = char_stack.hidden_dim();
  std::vector<Vec> d_out(n, Vec(2 * hid, 0.0));
  for (size_t i = 0; i < hid; ++i) {
    d_out[n - 1][i] += d_rep[i];
    d_out[0][hid + i] += d_rep[hid + i];
  }
  std::vector<Vec> dx = BiGruBackward(char_stack, trace.gru, d_out);
  for (size_t t = 0; t < n; ++t) char_table.AccumulateGrad(trace.chars[t], dx[t]);
}

// --- Sentence encoder -------------------------------------------------------

std::vector<ParamRef> SentenceEncoder::params() const {
  std::vector<ParamRef> out{chars.weights};
  for (auto &p : char_stack.params()) out.push_back(p);
  out.push_back(words.weights);
  for (auto &p : word_stack.params()) out.push_back(p);
  return out;
}

std::vector<Vec> EncodeSentence(const SentenceEncoder &encoder,
                                const Sentence &sentence,
                                SentenceTrace *trace) {
  size_t n = sentence.size();
  if (n == 0) throw DomainError("cannot encode an empty sentence");
  if (sentence.word_ids.size() != n || sentence.char_ids.size() != n) {
    throw DimensionError("sentence index arrays do not match token count");
  }
  if (trace != nullptr) {
    trace->words.assign(n, {});
    trace->word_ids = sentence.word_ids;
  }

  size_t char_width = encoder.char_stack.output_dim();
  size_t word_width = encoder.words.dim();
  std::vector<Vec> xs(n);
  for (size_t t = 0; t < n; ++t) {
    Vec rep = EncodeWordChars(encoder.chars, encoder.char_stack,
                              sentence.char_ids[t],
                              trace ? &trace->words[t] : nullptr);
    auto emb = encoder.words.Lookup(sentence.word_ids[t]);
    Vec &x = xs[t];
    x.reserve(char_width + word_width);
    x.insert(x.end(), rep.begin(), rep.end());
    x.insert(x.end(), emb.begin(), emb.end());
  }
  return BiGruForward(encoder.word_stack, xs, trace ? &trace->gru : nullptr);
}

void EncodeSentenceBackward(const SentenceEncoder &encoder,
                            const SentenceTrace &trace,
                            const std::vector<Vec> &d_outputs) {
  std::vector<Vec> dx = BiGruBackward(encoder.word_stack, trace.gru, d_outputs);
  size_t char_width = encoder.char_stack.output_dim();
  for (size_t t = 0; t < dx.size(); ++t) {
    std::span<const double> d(dx[t]);
    EncodeWordCharsBackward(encoder.chars, encoder.char_stack, trace.words[t],
                            d.first(char_width));
    encoder.words.AccumulateGrad(trace.word_ids[t], d.subspan(char_width));
  }
}

}  // namespace seqtag
