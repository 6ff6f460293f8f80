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

#ifndef SEQTAG_TESTS_SUPPORT_GRAD_H_
#define SEQTAG_TESTS_SUPPORT_GRAD_H_

#include <algorithm>
#include <functional>
#include <vector>

#include "seqtag/grad_check.h"
#include "seqtag/parameter.h"
#include "support/random.h"

namespace seqtag::testing {

inline void Randomize(const std::vector<ParamRef> &params, Rng &rng,
                      double scale = 0.5) {
  for (const ParamRef &p : params) {
    for (double &v : p->value.values()) v = rng.Uniform(-scale, scale);
  }
}

// Finite-difference check of every parameter in turn. `loss(backward)`
// evaluates the loss and, when backward is true, accumulates gradients into
// the parameters; grads are zeroed before each call.
inline double MaxParamGradError(const std::vector<ParamRef> &params,
                                const std::function<double(bool)> &loss,
                                Rng &rng, size_t max_coordinates = 0) {
  double worst = 0.0;
  for (const ParamRef &p : params) {
    Objective f = [&](const Tensor &theta, Tensor *grad) {
      Tensor saved = p->value;
      p->value = theta;
      for (const ParamRef &q : params) q->ZeroGrad();
      double v = loss(grad != nullptr);
      if (grad != nullptr) *grad = p->grad;
      p->value = saved;
      return v;
    };
    worst = std::max(worst,
                     GradCheck(f, p->value, rng, {1e-5, max_coordinates}));
  }
  return worst;
}

}  // namespace seqtag::testing

#endif  // SEQTAG_TESTS_SUPPORT_GRAD_H_
