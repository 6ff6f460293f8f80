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

#ifndef SEQTAG_OPS_H_
#define SEQTAG_OPS_H_

#include <span>

#include "seqtag/tensor.h"

namespace seqtag {

// Differentiable primitives. Forward functions are pure and return fresh
// tensors. Backward functions ADD into caller-owned gradient buffers; callers
// zero those buffers once per step.

// c = a * b for a [m x k] and b [k x n].
Tensor MatMul(const Tensor &a, const Tensor &b);
// da += dc * b^T, db += a^T * dc. Either output may be null.
void MatMulBackward(const Tensor &a, const Tensor &b, const Tensor &dc,
                    Tensor *da, Tensor *db);

Tensor Sigmoid(const Tensor &x);
// dx += dy * y * (1 - y), where y = Sigmoid(x).
void SigmoidBackward(const Tensor &y, const Tensor &dy, Tensor *dx);

Tensor Tanh(const Tensor &x);
// dx += dy * (1 - y^2), where y = Tanh(x).
void TanhBackward(const Tensor &y, const Tensor &dy, Tensor *dx);

// Numerically stable log(sum(exp(x))). Throws a domain error on empty input.
double LogSumExp(std::span<const double> x);
// dx += dy * softmax(x).
void LogSumExpBackward(std::span<const double> x, double dy,
                       std::span<double> dx);

double SigmoidScalar(double x);

// Vector kernels used inside the recurrent and CRF layers. W is a matrix
// tensor; spans must match its rows/cols.
//   out += W x
void MatVecAdd(const Tensor &w, std::span<const double> x,
               std::span<double> out);
//   out += W^T y
void MatTVecAdd(const Tensor &w, std::span<const double> y,
                std::span<double> out);
//   dw += y x^T
void OuterAdd(std::span<const double> y, std::span<const double> x,
              Tensor *dw);

}  // namespace seqtag

#endif  // SEQTAG_OPS_H_
