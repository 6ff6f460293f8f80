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

#include "seqtag/crf.h"

#include <cmath>
#include <string>

#include "seqtag/error.h"
#include "seqtag/ops.h"

namespace seqtag {

CrfLayer CrfLayer::Create(size_t num_labels, size_t feature_dim,
                          size_t extra_dim) {
  if (num_labels == 0) throw DimensionError("CRF needs at least one label");
  CrfLayer crf;
  crf.emission = MakeParameter({num_labels, feature_dim});
  crf.transitions = MakeParameter({num_labels, num_labels});
  crf.initial = MakeParameter({num_labels});
  if (extra_dim > 0) crf.extra = MakeParameter({num_labels, extra_dim});
  return crf;
}

std::vector<ParamRef> CrfLayer::params() const {
  std::vector<ParamRef> out{emission, transitions, initial};
  if (extra) out.push_back(extra);
  return out;
}

namespace {

void CheckTags(const CrfLayer &crf, size_t length,
               std::span<const size_t> tags) {
  if (tags.size() != length) {
    throw DomainError("tag sequence of length " + std::to_string(tags.size()) +
                      " for " + std::to_string(length) + " positions");
  }
  for (size_t t = 0; t < tags.size(); ++t) {
    if (tags[t] >= crf.num_labels()) {
      throw DomainError("tag " + std::to_string(tags[t]) + " at position " +
                        std::to_string(t) + " exceeds label count " +
                        std::to_string(crf.num_labels()));
    }
  }
}

void CheckEmissions(const Tensor &emissions) {
  if (emissions.rows() == 0) {
    throw DomainError("CRF over an empty sequence");
  }
}

// Log-space forward and backward tables of the cost-augmented chain.
struct Lattice {
  Tensor alpha;  // [T x L]
  Tensor beta;   // [T x L]
  Tensor local;  // emissions plus per-position cost
  double log_z = 0.0;
};

Lattice ForwardBackward(const CrfLayer &crf, const Tensor &emissions,
                        std::span<const size_t> gold, CostSpec cost) {
  size_t n = emissions.rows(), labels = crf.num_labels();
  const Tensor &trans = crf.transitions->value;
  const Tensor &init = crf.initial->value;

  Lattice lat;
  lat.local = emissions;
  if (cost.weight != 0.0) {
    for (size_t t = 0; t < n; ++t) {
      for (size_t l = 0; l < labels; ++l) {
        if (l != gold[t]) lat.local.at(t, l) += cost.weight;
      }
    }
  }

  lat.alpha = Tensor({n, labels});
  lat.beta = Tensor({n, labels});
  Vec scratch(labels);
  for (size_t l = 0; l < labels; ++l) {
    lat.alpha.at(0, l) = init[l] + lat.local.at(0, l);
  }
  for (size_t t = 1; t < n; ++t) {
    for (size_t l = 0; l < labels; ++l) {
      for (size_t p = 0; p < labels; ++p) {
        scratch[p] = lat.alpha.at(t - 1, p) + trans.at(p, l);
      }
      lat.alpha.at(t, l) = LogSumExp(scratch) + lat.local.at(t, l);
    }
  }
  for (size_t t = n - 1; t-- > 0;) {
    for (size_t l = 0; l < labels; ++l) {
      for (size_t m = 0; m < labels; ++m) {
        scratch[m] =
            trans.at(l, m) + lat.local.at(t + 1, m) + lat.beta.at(t + 1, m);
      }
      lat.beta.at(t, l) = LogSumExp(scratch);
    }
  }
  lat.log_z = LogSumExp(lat.alpha.row(n - 1));
  return lat;
}

void CheckFeatures(const CrfLayer &crf, const Features &h,
                   const Features *extras) {
  if (h.empty()) throw DomainError("CRF over an empty sequence");
  for (const Vec &v : h) {
    if (v.size() != crf.feature_dim()) {
      throw DimensionError("CRF feature of width " + std::to_string(v.size()) +
                           ", expected " + std::to_string(crf.feature_dim()));
    }
  }
  if (crf.extra && (extras == nullptr || extras->size() != h.size())) {
    throw DimensionError("CRF has an extra-feature block but no extra "
                         "features were supplied for every position");
  }
}

}  // namespace

Tensor EmissionScores(const CrfLayer &crf, const Features &h,
                      const Features *extras) {
  CheckFeatures(crf, h, extras);
  size_t n = h.size(), labels = crf.num_labels();
  Tensor scores({n, labels});
  for (size_t t = 0; t < n; ++t) {
    MatVecAdd(crf.emission->value, h[t], scores.row(t));
    if (crf.extra) MatVecAdd(crf.extra->value, (*extras)[t], scores.row(t));
  }
  return scores;
}

double PathScore(const CrfLayer &crf, const Tensor &emissions,
                 std::span<const size_t> tags) {
  CheckEmissions(emissions);
  CheckTags(crf, emissions.rows(), tags);
  const Tensor &trans = crf.transitions->value;
  double s = crf.initial->value[tags[0]];
  for (size_t t = 0; t < tags.size(); ++t) {
    s += emissions.at(t, tags[t]);
    if (t > 0) s += trans.at(tags[t - 1], tags[t]);
  }
  return s;
}

double AugmentedLogPartition(const CrfLayer &crf, const Tensor &emissions,
                             std::span<const size_t> gold, CostSpec cost) {
  CheckEmissions(emissions);
  CheckTags(crf, emissions.rows(), gold);
  return ForwardBackward(crf, emissions, gold, cost).log_z;
}

double ScoreSequence(const CrfLayer &crf, const Features &h,
                     std::span<const size_t> tags, const Features *extras) {
  return PathScore(crf, EmissionScores(crf, h, extras), tags);
}

double LogPartitionAugmented(const CrfLayer &crf, const Features &h,
                             std::span<const size_t> gold, CostSpec cost,
                             const Features *extras) {
  return AugmentedLogPartition(crf, EmissionScores(crf, h, extras), gold, cost);
}

double MarginLoss(const CrfLayer &crf, const Features &h,
                  std::span<const size_t> gold, CostSpec cost,
                  const Features *extras, Features *d_features) {
  if (cost.weight < 0) throw DomainError("cost weight must be nonnegative");
  Tensor emissions = EmissionScores(crf, h, extras);
  CheckTags(crf, emissions.rows(), gold);
  Lattice lat = ForwardBackward(crf, emissions, gold, cost);
  double loss = lat.log_z - PathScore(crf, emissions, gold);
  // Nonnegative in exact arithmetic; clamp rounding residue but keep NaN.
  if (loss < 0.0) loss = 0.0;
  if (d_features == nullptr) return loss;

  size_t n = h.size(), labels = crf.num_labels();
  const Tensor &trans = crf.transitions->value;
  Tensor &d_trans = crf.transitions->grad;
  Tensor &d_init = crf.initial->grad;

  // Unary marginals minus the gold indicator give the emission gradient.
  Tensor d_emit({n, labels});
  for (size_t t = 0; t < n; ++t) {
    for (size_t l = 0; l < labels; ++l) {
      d_emit.at(t, l) =
          std::exp(lat.alpha.at(t, l) + lat.beta.at(t, l) - lat.log_z);
    }
    d_emit.at(t, gold[t]) -= 1.0;
  }
  for (size_t l = 0; l < labels; ++l) d_init[l] += d_emit.at(0, l);

  for (size_t t = 0; t + 1 < n; ++t) {
    for (size_t p = 0; p < labels; ++p) {
      double a = lat.alpha.at(t, p) - lat.log_z;
      for (size_t m = 0; m < labels; ++m) {
        d_trans.at(p, m) += std::exp(a + trans.at(p, m) +
                                     lat.local.at(t + 1, m) +
                                     lat.beta.at(t + 1, m));
      }
    }
    d_trans.at(gold[t], gold[t + 1]) -= 1.0;
  }

  d_features->assign(n, Vec(crf.feature_dim(), 0.0));
  for (size_t t = 0; t < n; ++t) {
    OuterAdd(d_emit.row(t), h[t], &crf.emission->grad);
    MatTVecAdd(crf.emission->value, d_emit.row(t), (*d_features)[t]);
    if (crf.extra) OuterAdd(d_emit.row(t), (*extras)[t], &crf.extra->grad);
  }
  return loss;
}

ViterbiResult ViterbiDecode(const CrfLayer &crf, const Tensor &emissions) {
  CheckEmissions(emissions);
  size_t n = emissions.rows(), labels = crf.num_labels();
  const Tensor &trans = crf.transitions->value;
  const Tensor &init = crf.initial->value;

  // best.at(t, l): maximal score of positions t+1..T-1 given y_t = l. Decoding
  // then runs left to right so each choice can prefer the lower index.
  Tensor best({n, labels});
  for (size_t t = n - 1; t-- > 0;) {
    for (size_t l = 0; l < labels; ++l) {
      double m = -INFINITY;
      for (size_t k = 0; k < labels; ++k) {
        double v = trans.at(l, k) + emissions.at(t + 1, k) + best.at(t + 1, k);
        if (v > m) m = v;
      }
      best.at(t, l) = m;
    }
  }

  ViterbiResult result;
  result.tags.resize(n);
  double m = -INFINITY;
  for (size_t l = 0; l < labels; ++l) {
    double v = init[l] + emissions.at(0, l) + best.at(0, l);
    if (v > m) {
      m = v;
      result.tags[0] = l;
    }
  }
  for (size_t t = 1; t < n; ++t) {
    size_t prev = result.tags[t - 1];
    m = -INFINITY;
    for (size_t k = 0; k < labels; ++k) {
      double v = trans.at(prev, k) + emissions.at(t, k) + best.at(t, k);
      if (v > m) {
        m = v;
        result.tags[t] = k;
      }
    }
  }
  result.score = PathScore(crf, emissions, result.tags);
  return result;
}

ViterbiResult Viterbi(const CrfLayer &crf, const Features &h,
                      const Features *extras) {
  return ViterbiDecode(crf, EmissionScores(crf, h, extras));
}

}  // namespace seqtag
