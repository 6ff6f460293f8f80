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

#include "seqtag/ops.h"

#include <algorithm>
#include <cmath>

#include "seqtag/error.h"

namespace seqtag {

namespace {

void CheckSameShape(const char *op, const Tensor &a, const Tensor &b) {
  if (!a.SameShape(b)) {
    throw DimensionError(std::string(op) + ": shape " + a.ShapeString() +
                         " does not match " + b.ShapeString());
  }
}

void CheckMatrix(const char *op, const Tensor &t) {
  if (t.rank() != 2) {
    throw DimensionError(std::string(op) + ": expected a matrix, got " +
                         t.ShapeString());
  }
}

}  // namespace

Tensor MatMul(const Tensor &a, const Tensor &b) {
  CheckMatrix("matmul", a);
  CheckMatrix("matmul", b);
  if (a.dim(1) != b.dim(0)) {
    throw DimensionError("matmul: inner dimensions differ for " +
                         a.ShapeString() + " and " + b.ShapeString());
  }
  size_t m = a.dim(0), k = a.dim(1), n = b.dim(1);
  Tensor c({m, n});
  for (size_t i = 0; i < m; ++i) {
    for (size_t p = 0; p < k; ++p) {
      double aip = a.at(i, p);
      if (aip == 0.0) continue;
      for (size_t j = 0; j < n; ++j) c.at(i, j) += aip * b.at(p, j);
    }
  }
  return c;
}

void MatMulBackward(const Tensor &a, const Tensor &b, const Tensor &dc,
                    Tensor *da, Tensor *db) {
  size_t m = a.dim(0), k = a.dim(1), n = b.dim(1);
  if (dc.rank() != 2 || dc.dim(0) != m || dc.dim(1) != n) {
    throw DimensionError("matmul backward: upstream gradient " +
                         dc.ShapeString() + " does not match output [" +
                         std::to_string(m) + "x" + std::to_string(n) + "]");
  }
  if (da != nullptr) {
    CheckSameShape("matmul backward", a, *da);
    for (size_t i = 0; i < m; ++i) {
      for (size_t p = 0; p < k; ++p) {
        double s = 0.0;
        for (size_t j = 0; j < n; ++j) s += dc.at(i, j) * b.at(p, j);
        da->at(i, p) += s;
      }
    }
  }
  if (db != nullptr) {
    CheckSameShape("matmul backward", b, *db);
    for (size_t i = 0; i < m; ++i) {
      for (size_t p = 0; p < k; ++p) {
        double aip = a.at(i, p);
        for (size_t j = 0; j < n; ++j) db->at(p, j) += aip * dc.at(i, j);
      }
    }
  }
}

double SigmoidScalar(double x) {
  // Branching keeps exp() from overflowing for large |x|.
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  double e = std::exp(x);
  return e / (1.0 + e);
}

Tensor Sigmoid(const Tensor &x) {
  Tensor y(x.shape());
  for (size_t i = 0; i < x.size(); ++i) y[i] = SigmoidScalar(x[i]);
  return y;
}

void SigmoidBackward(const Tensor &y, const Tensor &dy, Tensor *dx) {
  CheckSameShape("sigmoid backward", y, dy);
  CheckSameShape("sigmoid backward", y, *dx);
  for (size_t i = 0; i < y.size(); ++i) (*dx)[i] += dy[i] * y[i] * (1 - y[i]);
}

Tensor Tanh(const Tensor &x) {
  Tensor y(x.shape());
  for (size_t i = 0; i < x.size(); ++i) y[i] = std::tanh(x[i]);
  return y;
}

void TanhBackward(const Tensor &y, const Tensor &dy, Tensor *dx) {
  CheckSameShape("tanh backward", y, dy);
  CheckSameShape("tanh backward", y, *dx);
  for (size_t i = 0; i < y.size(); ++i) (*dx)[i] += dy[i] * (1 - y[i] * y[i]);
}

double LogSumExp(std::span<const double> x) {
  if (x.empty()) throw DomainError("logsumexp of an empty vector");
  double m = *std::max_element(x.begin(), x.end());
  if (x.size() == 1) return m;
  if (std::isinf(m)) return m;
  double s = 0.0;
  for (double v : x) s += std::exp(v - m);
  return m + std::log(s);
}

void LogSumExpBackward(std::span<const double> x, double dy,
                       std::span<double> dx) {
  if (dx.size() != x.size()) {
    throw DimensionError("logsumexp backward: gradient length mismatch");
  }
  double z = LogSumExp(x);
  for (size_t i = 0; i < x.size(); ++i) dx[i] += dy * std::exp(x[i] - z);
}

void MatVecAdd(const Tensor &w, std::span<const double> x,
               std::span<double> out) {
  size_t rows = w.rows(), cols = w.cols();
  if (x.size() != cols || out.size() != rows) {
    throw DimensionError("matrix " + w.ShapeString() + " applied to vector of " +
                         std::to_string(x.size()) + " into " +
                         std::to_string(out.size()));
  }
  const double *p = w.data();
  for (size_t r = 0; r < rows; ++r, p += cols) {
    double s = 0.0;
    for (size_t c = 0; c < cols; ++c) s += p[c] * x[c];
    out[r] += s;
  }
}

void MatTVecAdd(const Tensor &w, std::span<const double> y,
                std::span<double> out) {
  size_t rows = w.rows(), cols = w.cols();
  if (y.size() != rows || out.size() != cols) {
    throw DimensionError("transposed matrix " + w.ShapeString() +
                         " applied to vector of " + std::to_string(y.size()));
  }
  const double *p = w.data();
  for (size_t r = 0; r < rows; ++r, p += cols) {
    double yr = y[r];
    if (yr == 0.0) continue;
    for (size_t c = 0; c < cols; ++c) out[c] += p[c] * yr;
  }
}

void OuterAdd(std::span<const double> y, std::span<const double> x,
              Tensor *dw) {
  size_t rows = dw->rows(), cols = dw->cols();
  if (y.size() != rows || x.size() != cols) {
    throw DimensionError("outer product does not fit gradient " +
                         dw->ShapeString());
  }
  double *p = dw->data();
  for (size_t r = 0; r < rows; ++r, p += cols) {
    double yr = y[r];
    if (yr == 0.0) continue;
    for (size_t c = 0; c < cols; ++c) p[c] += yr * x[c];
  }
}

}  // namespace seqtag
