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

#include <cmath>

#include "gtest/gtest.h"
#include "seqtag/encoder.h"
#include "seqtag/error.h"
#include "seqtag/ops.h"
#include "support/grad.h"

namespace seqtag {
namespace {

using testing::MaxParamGradError;
using testing::Randomize;
using testing::RandomVector;

constexpr uint64_t kSeeds[] = {1, 2, 3, 4, 5};

std::vector<ParamRef> CellParams(const GruCell &cell) {
  auto a = cell.params();
  return {a.begin(), a.end()};
}

double SumSquares(const std::vector<Vec> &hs) {
  double s = 0.0;
  for (const Vec &h : hs) {
    for (double v : h) s += v * v;
  }
  return s;
}

std::vector<Vec> TwiceEach(const std::vector<Vec> &hs) {
  std::vector<Vec> d = hs;
  for (Vec &v : d) {
    for (double &x : v) x *= 2.0;
  }
  return d;
}

// --- GruStep ----------------------------------------------------------------

TEST(GruStepTest, ZeroWeightsZeroState) {
  GruCell cell = GruCell::Create(3, 2);
  Vec h = GruStep(cell, Vec{1.0, -2.0, 3.0}, Vec{0.0, 0.0});
  EXPECT_EQ(h, (Vec{0.0, 0.0}));
}

TEST(GruStepTest, ScalarHandEvaluation) {
  GruCell cell = GruCell::Create(1, 1);
  cell.w_hx->value[0] = 1.0;
  GruStepCache cache;
  Vec h = GruStep(cell, Vec{1.0}, Vec{0.0}, &cache);
  EXPECT_NEAR(h[0], 0.3807971, 1e-7);
  EXPECT_DOUBLE_EQ(h[0], 0.5 * std::tanh(1.0));
  EXPECT_EQ(cache.r[0], 0.5);
  EXPECT_EQ(cache.z[0], 0.5);
}

TEST(GruStepTest, ZeroWeightsHalveState) {
  GruCell cell = GruCell::Create(2, 3);
  Vec h = GruStep(cell, Vec{5.0, 6.0}, Vec{0.4, -2.0, 8.0});
  EXPECT_EQ(h, (Vec{0.2, -1.0, 4.0}));
}

TEST(GruStepTest, MismatchNamesMatrix) {
  GruCell cell = GruCell::Create(2, 3);
  try {
    GruStep(cell, Vec{1.0}, Vec{0.0, 0.0, 0.0});
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDimension);
    EXPECT_NE(std::string(e.what()).find("W_rx"), std::string::npos)
        << e.what();
  }
  try {
    GruStep(cell, Vec{1.0, 2.0}, Vec{0.0});
    FAIL();
  } catch (const Error &e) {
    EXPECT_NE(std::string(e.what()).find("W_rh"), std::string::npos)
        << e.what();
  }
}

TEST(GruStepTest, ConvexCombinationProperty) {
  for (uint64_t seed = 1; seed <= 50; ++seed) {
    Rng rng(seed);
    size_t in = testing::RandomSize(rng, 1, 5), hid = testing::RandomSize(rng, 1, 5);
    GruCell cell = GruCell::Create(in, hid);
    Randomize(CellParams(cell), rng, 2.0);
    Vec x = RandomVector(in, rng, 3.0), hp = RandomVector(hid, rng, 3.0);
    GruStepCache c;
    Vec h = GruStep(cell, x, hp, &c);
    for (size_t i = 0; i < hid; ++i) {
      EXPECT_LE(h[i], std::max(hp[i], c.cand[i]) + 1e-15);
      EXPECT_GE(h[i], std::min(hp[i], c.cand[i]) - 1e-15);
      EXPECT_LE(std::abs(h[i]), std::max(std::abs(hp[i]), 1.0));
    }
  }
}

TEST(GruStepTest, GradCheck) {
  for (uint64_t seed : kSeeds) {
    Rng rng(seed);
    GruCell cell = GruCell::Create(3, 4);
    Randomize(CellParams(cell), rng);
    Vec x = RandomVector(3, rng), hp = RandomVector(4, rng);
    Vec r = RandomVector(4, rng);
    auto loss = [&](bool backward) {
      GruStepCache c;
      Vec h = GruStep(cell, x, hp, &c);
      double v = 0;
      for (size_t i = 0; i < 4; ++i) v += r[i] * h[i];
      if (backward) {
        Vec dx(3), dh(4);
        GruStepBackward(cell, c, r, dx, dh);
      }
      return v;
    };
    EXPECT_LT(MaxParamGradError(CellParams(cell), loss, rng), 1e-6);
  }
}

TEST(GruStepTest, InputAndStateGradients) {
  Rng rng(8);
  GruCell cell = GruCell::Create(3, 2);
  Randomize(CellParams(cell), rng);
  Vec r = RandomVector(2, rng);
  Tensor xh = testing::RandomTensor({5}, rng);
  Objective f = [&](const Tensor &t, Tensor *grad) {
    Vec x(t.data(), t.data() + 3), hp(t.data() + 3, t.data() + 5);
    GruStepCache c;
    Vec h = GruStep(cell, x, hp, &c);
    if (grad) {
      *grad = Tensor::Zeros({5});
      GruStepBackward(cell, c, r, grad->values().subspan(0, 3),
                      grad->values().subspan(3, 2));
    }
    return r[0] * h[0] + r[1] * h[1];
  };
  EXPECT_LT(GradCheck(f, xh, rng), 1e-6);
}

// --- BiGru ------------------------------------------------------------------

TEST(BiGruTest, ZeroWeightsGiveZeros) {
  BiGruStack stack = BiGruStack::Create(3, 2);
  Rng rng(1);
  std::vector<Vec> xs = {RandomVector(3, rng), RandomVector(3, rng)};
  std::vector<Vec> out = BiGruForward(stack, xs);
  ASSERT_EQ(out.size(), 2u);
  for (const Vec &h : out) EXPECT_EQ(h, Vec(4, 0.0));
}

TEST(BiGruTest, EmptySequenceIsDomainError) {
  BiGruStack stack = BiGruStack::Create(3, 2);
  try {
    BiGruForward(stack, {});
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDomain);
  }
}

TEST(BiGruTest, LayerTwoInputIsTwiceHidden) {
  BiGruStack stack = BiGruStack::Create(7, 5);
  EXPECT_EQ(stack.layers[1].forward.input_dim(), 10u);
  EXPECT_EQ(stack.layers[1].backward.input_dim(), 10u);
  EXPECT_EQ(stack.output_dim(), 10u);
  EXPECT_EQ(stack.params().size(), 24u);
}

// Unrolled recurrence built from GruStep calls.
std::vector<Vec> Unrolled(const BiGruStack &stack, std::vector<Vec> xs) {
  for (const BiGruLayer &layer : stack.layers) {
    size_t T = xs.size(), H = layer.forward.hidden_dim();
    std::vector<Vec> f(T), b(T);
    Vec h(H, 0.0);
    for (size_t t = 0; t < T; ++t) f[t] = h = GruStep(layer.forward, xs[t], h);
    h.assign(H, 0.0);
    for (size_t t = T; t-- > 0;) b[t] = h = GruStep(layer.backward, xs[t], h);
    for (size_t t = 0; t < T; ++t) {
      xs[t] = f[t];
      xs[t].insert(xs[t].end(), b[t].begin(), b[t].end());
    }
  }
  return xs;
}

TEST(BiGruTest, MatchesUnrolledOracle) {
  for (uint64_t seed : kSeeds) {
    Rng rng(seed);
    BiGruStack stack = BiGruStack::Create(3, 2);
    Randomize(stack.params(), rng, 1.0);
    std::vector<Vec> xs = {RandomVector(3, rng), RandomVector(3, rng),
                           RandomVector(3, rng)};
    std::vector<Vec> got = BiGruForward(stack, xs);
    std::vector<Vec> want = Unrolled(stack, xs);
    ASSERT_EQ(got.size(), want.size());
    for (size_t t = 0; t < got.size(); ++t) {
      for (size_t i = 0; i < got[t].size(); ++i) {
        EXPECT_NEAR(got[t][i], want[t][i], 1e-14);
      }
    }
  }
}

TEST(BiGruTest, LengthOneSeesOnlyItsInput) {
  Rng rng(4);
  BiGruStack stack = BiGruStack::Create(2, 3);
  Randomize(stack.params(), rng, 1.0);
  Vec x = RandomVector(2, rng);
  Vec zero(3, 0.0);
  Vec f1 = GruStep(stack.layers[0].forward, x, zero);
  Vec b1 = GruStep(stack.layers[0].backward, x, zero);
  Vec mid = f1;
  mid.insert(mid.end(), b1.begin(), b1.end());
  Vec f2 = GruStep(stack.layers[1].forward, mid, zero);
  Vec b2 = GruStep(stack.layers[1].backward, mid, zero);
  Vec want = f2;
  want.insert(want.end(), b2.begin(), b2.end());
  EXPECT_EQ(BiGruForward(stack, {x})[0], want);
}

TEST(BiGruTest, DirectionSwapSymmetry) {
  for (uint64_t seed : kSeeds) {
    Rng rng(seed);
    BiGruStack stack = BiGruStack::Create(3, 2);
    Randomize(stack.params(), rng, 1.0);
    BiGruStack swapped = stack;
    for (BiGruLayer &layer : swapped.layers) {
      std::swap(layer.forward, layer.backward);
    }
    // Layer 2 reads [fwd; bwd]; after swapping it reads [bwd'; fwd'], so its
    // input columns must be permuted to match.
    for (GruCell *cell :
         {&swapped.layers[1].forward, &swapped.layers[1].backward}) {
      for (ParamRef *p : {&cell->w_rx, &cell->w_zx, &cell->w_hx}) {
        ParamRef q = MakeParameter((*p)->value.shape());
        size_t H = 2;
        for (size_t r = 0; r < q->value.rows(); ++r) {
          for (size_t c = 0; c < 2 * H; ++c) {
            q->value.at(r, c) = (*p)->value.at(r, (c + H) % (2 * H));
          }
        }
        *p = q;
      }
    }
    std::vector<Vec> xs = {RandomVector(3, rng), RandomVector(3, rng),
                           RandomVector(3, rng), RandomVector(3, rng)};
    std::vector<Vec> rev(xs.rbegin(), xs.rend());
    std::vector<Vec> a = BiGruForward(stack, xs);
    std::vector<Vec> b = BiGruForward(swapped, rev);
    for (size_t t = 0; t < xs.size(); ++t) {
      const Vec &u = a[t], &v = b[xs.size() - 1 - t];
      for (size_t i = 0; i < 2; ++i) {
        EXPECT_NEAR(u[i], v[i + 2], 1e-14);
        EXPECT_NEAR(u[i + 2], v[i], 1e-14);
      }
    }
  }
}

TEST(BiGruTest, GradCheck) {
  for (uint64_t seed : kSeeds) {
    Rng rng(seed);
    BiGruStack stack = BiGruStack::Create(3, 2);
    Randomize(stack.params(), rng);
    std::vector<Vec> xs = {RandomVector(3, rng), RandomVector(3, rng),
                           RandomVector(3, rng)};
    auto loss = [&](bool backward) {
      BiGruTrace trace;
      std::vector<Vec> out = BiGruForward(stack, xs, &trace);
      if (backward) BiGruBackward(stack, trace, TwiceEach(out));
      return SumSquares(out);
    };
    EXPECT_LT(MaxParamGradError(stack.params(), loss, rng), 1e-6)
        << "seed " << seed;
  }
}

TEST(BiGruTest, InputGradients) {
  Rng rng(12);
  BiGruStack stack = BiGruStack::Create(2, 2);
  Randomize(stack.params(), rng);
  Tensor x0 = testing::RandomTensor({3, 2}, rng);
  Objective f = [&](const Tensor &t, Tensor *grad) {
    std::vector<Vec> xs;
    for (size_t i = 0; i < 3; ++i) xs.emplace_back(t.row(i).begin(), t.row(i).end());
    BiGruTrace trace;
    std::vector<Vec> out = BiGruForward(stack, xs, &trace);
    if (grad) {
      std::vector<Vec> dx = BiGruBackward(stack, trace, TwiceEach(out));
      *grad = Tensor::Zeros({3, 2});
      for (size_t i = 0; i < 3; ++i) {
        for (size_t j = 0; j < 2; ++j) grad->at(i, j) = dx[i][j];
      }
    }
    return SumSquares(out);
  };
  EXPECT_LT(GradCheck(f, x0, rng), 1e-6);
}

// --- Character and sentence encoders ----------------------------------------

SentenceEncoder SmallEncoder(size_t char_vocab, size_t word_vocab,
                             size_t char_dim, size_t word_dim,
                             size_t char_hidden, size_t word_hidden) {
  SentenceEncoder enc;
  enc.chars = EmbeddingTable::Create(char_vocab, char_dim);
  enc.char_stack = BiGruStack::Create(char_dim, char_hidden);
  enc.words = EmbeddingTable::Create(word_vocab, word_dim);
  enc.word_stack = BiGruStack::Create(2 * char_hidden + word_dim, word_hidden);
  return enc;
}

Sentence MakeSentence(std::vector<std::vector<size_t>> chars,
                      std::vector<size_t> words) {
  Sentence s;
  for (size_t i = 0; i < words.size(); ++i) s.tokens.push_back("w");
  s.char_ids = std::move(chars);
  s.word_ids = std::move(words);
  return s;
}

TEST(EmbeddingTest, LookupAndBounds) {
  EmbeddingTable t = EmbeddingTable::Create(4, 3);
  t.weights->value.at(2, 1) = 7.0;
  EXPECT_EQ(t.Lookup(2)[1], 7.0);
  EXPECT_THROW(t.Lookup(4), Error);
  t.AccumulateGrad(2, Vec{1.0, 2.0, 3.0});
  t.AccumulateGrad(2, Vec{1.0, 2.0, 3.0});
  EXPECT_EQ(t.weights->grad.at(2, 2), 6.0);
}

TEST(CharEncoderTest, SingleCharZeroWeights) {
  SentenceEncoder enc = SmallEncoder(5, 5, 3, 2, 2, 2);
  size_t c[] = {3};
  EXPECT_EQ(EncodeWordChars(enc.chars, enc.char_stack, c), Vec(4, 0.0));
}

TEST(CharEncoderTest, EmptyWordIsDomainError) {
  SentenceEncoder enc = SmallEncoder(5, 5, 3, 2, 2, 2);
  EXPECT_THROW(EncodeWordChars(enc.chars, enc.char_stack, {}), Error);
}

TEST(CharEncoderTest, OrderSensitiveAndPure) {
  Rng rng(2);
  SentenceEncoder enc = SmallEncoder(5, 5, 3, 2, 4, 2);
  Randomize(enc.params(), rng, 1.0);
  size_t ab[] = {2, 3}, ba[] = {3, 2};
  Vec x = EncodeWordChars(enc.chars, enc.char_stack, ab);
  Vec y = EncodeWordChars(enc.chars, enc.char_stack, ba);
  EXPECT_NE(x, y);
  EXPECT_EQ(x, EncodeWordChars(enc.chars, enc.char_stack, ab));
}

TEST(CharEncoderTest, UsesFinalStatesOfTopLayer) {
  Rng rng(3);
  SentenceEncoder enc = SmallEncoder(6, 5, 3, 2, 2, 2);
  Randomize(enc.params(), rng, 1.0);
  size_t chars[] = {2, 5, 4};
  std::vector<Vec> xs;
  for (size_t c : chars) {
    auto e = enc.chars.Lookup(c);
    xs.emplace_back(e.begin(), e.end());
  }
  std::vector<Vec> out = BiGruForward(enc.char_stack, xs);
  Vec want = {out[2][0], out[2][1], out[0][2], out[0][3]};
  EXPECT_EQ(EncodeWordChars(enc.chars, enc.char_stack, chars), want);
}

TEST(SentenceEncoderTest, ZeroModelShape) {
  SentenceEncoder enc = SmallEncoder(5, 5, 3, 4, 2, 3);
  std::vector<Vec> h = EncodeSentence(enc, MakeSentence({{2, 3}}, {2}));
  ASSERT_EQ(h.size(), 1u);
  EXPECT_EQ(h[0], Vec(6, 0.0));
}

TEST(SentenceEncoderTest, MatchesCompositionOracle) {
  Rng rng(6);
  SentenceEncoder enc = SmallEncoder(6, 6, 3, 2, 2, 3);
  Randomize(enc.params(), rng, 1.0);
  Sentence s = MakeSentence({{2, 3}, {4}, {5, 2, 3}}, {2, 1, 5});
  std::vector<Vec> inputs;
  for (size_t i = 0; i < s.size(); ++i) {
    Vec x = EncodeWordChars(enc.chars, enc.char_stack, s.char_ids[i]);
    auto w = enc.words.Lookup(s.word_ids[i]);
    x.insert(x.end(), w.begin(), w.end());
    inputs.push_back(x);
  }
  std::vector<Vec> want = BiGruForward(enc.word_stack, inputs);
  EXPECT_EQ(EncodeSentence(enc, s), want);
}

TEST(SentenceEncoderTest, OutputLengthMatchesTokens) {
  Rng rng(7);
  SentenceEncoder enc = SmallEncoder(6, 6, 2, 2, 2, 2);
  Randomize(enc.params(), rng, 1.0);
  for (size_t n = 1; n <= 6; ++n) {
    std::vector<std::vector<size_t>> chars(n, {2, 3});
    std::vector<size_t> words(n, 4);
    EXPECT_EQ(EncodeSentence(enc, MakeSentence(chars, words)).size(), n);
  }
}

TEST(SentenceEncoderTest, FullGradCheck) {
  for (uint64_t seed : kSeeds) {
    Rng rng(seed);
    SentenceEncoder enc = SmallEncoder(6, 6, 2, 3, 2, 2);
    Randomize(enc.params(), rng);
    Sentence s = MakeSentence({{2, 3}, {4}, {5, 2}}, {2, 1, 5});
    auto loss = [&](bool backward) {
      SentenceTrace trace;
      std::vector<Vec> h = EncodeSentence(enc, s, &trace);
      if (backward) EncodeSentenceBackward(enc, trace, TwiceEach(h));
      return SumSquares(h);
    };
    EXPECT_LT(MaxParamGradError(enc.params(), loss, rng), 1e-4)
        << "seed " << seed;
  }
}

}  // namespace
}  // namespace seqtag
