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

#include "seqtag/grad_check.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "seqtag/error.h"

namespace seqtag {

namespace {

double Evaluate(const Objective &f, const Tensor &theta) {
  double v = f(theta, nullptr);
  if (!std::isfinite(v)) {
    throw NumericError("gradient check: objective is not finite");
  }
  return v;
}

}  // namespace

double GradCheck(const Objective &f, const Tensor &theta, Rng &rng,
                 const GradCheckOptions &options) {
  Tensor analytic(theta.shape());
  double base = f(theta, &analytic);
  if (!std::isfinite(base)) {
    throw NumericError("gradient check: objective is not finite");
  }

  std::vector<size_t> coords(theta.size());
  std::iota(coords.begin(), coords.end(), 0);
  if (options.max_coordinates > 0 && coords.size() > options.max_coordinates) {
    rng.Shuffle(&coords);
    coords.resize(options.max_coordinates);
    std::sort(coords.begin(), coords.end());
  }

  double worst = 0.0;
  Tensor probe = theta;
  for (size_t i : coords) {
    double orig = probe[i];
    probe[i] = orig + options.step;
    double plus = Evaluate(f, probe);
    probe[i] = orig - options.step;
    double minus = Evaluate(f, probe);
    probe[i] = orig;
    double numeric = (plus - minus) / (2 * options.step);
    double a = analytic[i];
    double scale = std::max({1.0, std::fabs(a), std::fabs(numeric)});
    worst = std::max(worst, std::fabs(a - numeric) / scale);
  }
  return worst;
}

}  // namespace seqtag
