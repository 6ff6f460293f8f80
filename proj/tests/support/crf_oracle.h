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

#ifndef SEQTAG_TESTS_SUPPORT_CRF_ORACLE_H_
#define SEQTAG_TESTS_SUPPORT_CRF_ORACLE_H_

#include <cmath>
#include <functional>
#include <vector>

#include "seqtag/crf.h"

namespace seqtag::testing {

// Brute-force references over all L^T tag sequences, written independently
// of the library's dynamic programs.

// Calls visit(seq) for every sequence in lexicographic order.
inline void ForEachSequence(size_t T, size_t L,
                            const std::function<void(const std::vector<size_t> &)> &visit) {
  std::vector<size_t> seq(T, 0);
  while (true) {
    visit(seq);
    size_t i = T;
    while (i > 0 && seq[i - 1] + 1 == L) seq[--i] = 0;
    if (i == 0) return;
    ++seq[i - 1];
  }
}

inline double OracleScore(const Tensor &emissions, const Tensor &transitions,
                          const Tensor &initial,
                          const std::vector<size_t> &y) {
  double s = initial[y[0]];
  for (size_t t = 0; t < y.size(); ++t) s += emissions.at(t, y[t]);
  for (size_t t = 1; t < y.size(); ++t) s += transitions.at(y[t - 1], y[t]);
  return s;
}

inline double OracleLogPartition(const Tensor &emissions,
                                 const Tensor &transitions,
                                 const Tensor &initial,
                                 const std::vector<size_t> &gold,
                                 double weight) {
  size_t T = emissions.rows(), L = emissions.cols();
  std::vector<double> terms;
  ForEachSequence(T, L, [&](const std::vector<size_t> &y) {
    double cost = 0.0;
    for (size_t t = 0; t < T; ++t) cost += y[t] != gold[t] ? weight : 0.0;
    terms.push_back(OracleScore(emissions, transitions, initial, y) + cost);
  });
  double m = terms[0];
  for (double v : terms) m = std::max(m, v);
  double sum = 0.0;
  for (double v : terms) sum += std::exp(v - m);
  return m + std::log(sum);
}

// First sequence (in lexicographic order) with the strictly highest score.
inline std::vector<size_t> OracleArgmax(const Tensor &emissions,
                                        const Tensor &transitions,
                                        const Tensor &initial) {
  std::vector<size_t> best;
  double best_score = 0.0;
  ForEachSequence(emissions.rows(), emissions.cols(),
                  [&](const std::vector<size_t> &y) {
                    double s = OracleScore(emissions, transitions, initial, y);
                    if (best.empty() || s > best_score) {
                      best = y;
                      best_score = s;
                    }
                  });
  return best;
}

// Plain CRF negative log-likelihood by a textbook forward recursion in
// probability space with per-step rescaling.
inline double PlainCrfNll(const Tensor &emissions, const Tensor &transitions,
                          const Tensor &initial,
                          const std::vector<size_t> &gold) {
  size_t T = emissions.rows(), L = emissions.cols();
  double log_z = 0.0;
  std::vector<double> alpha(L);
  double shift = emissions.at(0, 0) + initial[0];
  for (size_t l = 0; l < L; ++l) {
    shift = std::max(shift, emissions.at(0, l) + initial[l]);
  }
  for (size_t l = 0; l < L; ++l) {
    alpha[l] = std::exp(emissions.at(0, l) + initial[l] - shift);
  }
  log_z += shift;
  for (size_t t = 1; t < T; ++t) {
    std::vector<double> next(L, 0.0);
    double top = -INFINITY;
    for (size_t j = 0; j < L; ++j) {
      for (size_t i = 0; i < L; ++i) {
        top = std::max(top, transitions.at(i, j) + emissions.at(t, j));
      }
    }
    for (size_t j = 0; j < L; ++j) {
      for (size_t i = 0; i < L; ++i) {
        next[j] += alpha[i] *
                   std::exp(transitions.at(i, j) + emissions.at(t, j) - top);
      }
    }
    double norm = 0.0;
    for (double v : next) norm += v;
    for (double &v : next) v /= norm;
    log_z += top + std::log(norm);
    alpha = next;
  }
  double total = 0.0;
  for (double v : alpha) total += v;
  log_z += std::log(total);
  return log_z - OracleScore(emissions, transitions, initial, gold);
}

}  // namespace seqtag::testing

#endif  // SEQTAG_TESTS_SUPPORT_CRF_ORACLE_H_
