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

#ifndef SEQTAG_GRAD_CHECK_H_
#define SEQTAG_GRAD_CHECK_H_

#include <cstddef>
#include <functional>

#include "seqtag/rng.h"
#include "seqtag/tensor.h"

namespace seqtag {

// Scalar objective of a parameter tensor. When `grad` is non-null the
// objective also writes its analytic gradient there (overwriting, same shape
// as theta).
using Objective = std::function<double(const Tensor &theta, Tensor *grad)>;

struct GradCheckOptions {
  double step = 1e-5;
  // Number of coordinates to probe; 0 probes every coordinate.
  size_t max_coordinates = 0;
};

// Compares the analytic gradient with central finite differences and returns
// the largest |analytic - numeric| / max(1, |analytic|, |numeric|) over the
// probed coordinates. Coordinates are sampled with `rng` when the tensor has
// more than max_coordinates entries.
double GradCheck(const Objective &f, const Tensor &theta, Rng &rng,
                 const GradCheckOptions &options = {});

}  // namespace seqtag

#endif  // SEQTAG_GRAD_CHECK_H_
