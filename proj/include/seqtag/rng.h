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

#ifndef SEQTAG_RNG_H_
#define SEQTAG_RNG_H_

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

namespace seqtag {

// SplitMix64 generator. The draw sequence depends only on the seed, so runs
// are reproducible across platforms and standard library implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed = 0) : state_(seed) {}

  // Independent stream for a named purpose, e.g. Rng::Derive(seed, "task").
  static Rng Derive(uint64_t seed, std::string_view stream);

  uint64_t Next();

  // Uniform in [0, 1) with 53 bits of resolution.
  double Uniform();
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  // Uniform integer in [0, n). n must be positive.
  uint64_t UniformInt(uint64_t n);

  // True with probability p.
  bool Bernoulli(double p) { return Uniform() < p; }

  template <typename T>
  void Shuffle(std::vector<T> *items) {
    for (size_t i = items->size(); i > 1; --i) {
      size_t j = UniformInt(i);
      std::swap((*items)[i - 1], (*items)[j]);
    }
  }

 private:
  uint64_t state_;
};

// 64-bit FNV-1a; used to key derived streams by name.
uint64_t Fingerprint(std::string_view text);

}  // namespace seqtag

#endif  // SEQTAG_RNG_H_
