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

#ifndef SEQTAG_PARAMETER_H_
#define SEQTAG_PARAMETER_H_

#include <memory>
#include <vector>

#include "seqtag/rng.h"
#include "seqtag/tensor.h"

namespace seqtag {

// A trainable tensor with its gradient buffer. Layers hold parameters through
// shared references so that two task views can alias the same storage.
struct Parameter {
  explicit Parameter(std::vector<size_t> shape)
      : value(shape), grad(std::move(shape)) {}

  Tensor value;
  Tensor grad;
  // Frozen parameters still receive gradients but are skipped by optimizers.
  bool trainable = true;

  void ZeroGrad() { grad.Fill(0.0); }
};

using ParamRef = std::shared_ptr<Parameter>;

inline ParamRef MakeParameter(std::vector<size_t> shape) {
  return std::make_shared<Parameter>(std::move(shape));
}

// Uniform in +-sqrt(6 / (fan_in + fan_out)) with fan_out = rows and
// fan_in = cols; vectors use fan_in = 1.
void GlorotUniform(Tensor *t, Rng &rng);

}  // namespace seqtag

#endif  // SEQTAG_PARAMETER_H_
