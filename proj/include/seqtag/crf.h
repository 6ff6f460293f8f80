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

#ifndef SEQTAG_CRF_H_
#define SEQTAG_CRF_H_

#include <span>
#include <vector>

#include "seqtag/encoder.h"
#include "seqtag/parameter.h"

namespace seqtag {

// Linear-chain CRF output layer. Emission score of label l at position t is
//   (emission h_t)[l] + (extra e_t)[l]
// where the second term is present only when the layer has an extra-feature
// block. A sequence scores
//   initial[y_1] + sum_t emission_t[y_t] + sum_{t>=2} transitions[y_{t-1}, y_t].
struct CrfLayer {
  ParamRef emission;     // [labels x feature_dim]
  ParamRef transitions;  // [labels x labels], row = previous tag
  ParamRef initial;      // [labels]
  ParamRef extra;        // [labels x extra_dim] or null

  static CrfLayer Create(size_t num_labels, size_t feature_dim,
                         size_t extra_dim = 0);

  size_t num_labels() const { return transitions->value.rows(); }
  size_t feature_dim() const { return emission->value.cols(); }
  size_t extra_dim() const { return extra ? extra->value.cols() : 0; }

  std::vector<ParamRef> params() const;
};

// Hamming cost, scaled by weight: cost(y, y') = weight * #{t : y_t != y'_t}.
struct CostSpec {
  double weight = 1.0;
};

using Features = std::vector<Vec>;

// Emission score matrix [T x labels].
Tensor EmissionScores(const CrfLayer &crf, const Features &h,
                      const Features *extras = nullptr);

double ScoreSequence(const CrfLayer &crf, const Features &h,
                     std::span<const size_t> tags,
                     const Features *extras = nullptr);

// log sum_{y'} exp(f(h, y') + cost(gold, y')).
double LogPartitionAugmented(const CrfLayer &crf, const Features &h,
                             std::span<const size_t> gold, CostSpec cost,
                             const Features *extras = nullptr);

// LogPartitionAugmented - ScoreSequence(gold); nonnegative for weight >= 0.
// When d_features is non-null the gradients w.r.t. all CRF parameters are
// accumulated and d_features receives the gradient w.r.t. h.
double MarginLoss(const CrfLayer &crf, const Features &h,
                  std::span<const size_t> gold, CostSpec cost,
                  const Features *extras = nullptr,
                  Features *d_features = nullptr);

struct ViterbiResult {
  std::vector<size_t> tags;
  double score = 0.0;
};

// Highest-scoring tag sequence. Among equal-scoring sequences the
// lexicographically smallest one is returned: every choice prefers the lower
// label index.
ViterbiResult Viterbi(const CrfLayer &crf, const Features &h,
                      const Features *extras = nullptr);

// Lower-level forms operating on a precomputed emission matrix.
double PathScore(const CrfLayer &crf, const Tensor &emissions,
                 std::span<const size_t> tags);
double AugmentedLogPartition(const CrfLayer &crf, const Tensor &emissions,
                             std::span<const size_t> gold, CostSpec cost);
ViterbiResult ViterbiDecode(const CrfLayer &crf, const Tensor &emissions);

}  // namespace seqtag

#endif  // SEQTAG_CRF_H_
