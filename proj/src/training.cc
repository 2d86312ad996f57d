// training.cc

// Copyright 2026  The pmkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "pmkit/training.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pmkit/error.h"

namespace pmkit {

FeatureNormalizer FeatureNormalizer::Fit(std::span<const Matrix *const> matrices) {
  std::size_t dim = 0;
  std::size_t count = 0;
  for (const Matrix *m : matrices) {
    if (m->rows() == 0) continue;
    if (dim == 0) dim = m->cols();
    if (m->cols() != dim) throw Error(ErrorCategory::kDimensionMismatch, "feature dimension varies across records");
    count += m->rows();
  }
  if (count == 0) throw Error(ErrorCategory::kEmptyInput, "no feature rows to normalise");

  FeatureNormalizer norm;
  norm.mean.assign(dim, 0.0);
  norm.stddev.assign(dim, 0.0);
  for (const Matrix *m : matrices)
    for (std::size_t r = 0; r < m->rows(); ++r)
      for (std::size_t k = 0; k < dim; ++k) norm.mean[k] += (*m)(r, k);
  for (double &v : norm.mean) v /= static_cast<double>(count);
  for (const Matrix *m : matrices)
    for (std::size_t r = 0; r < m->rows(); ++r)
      for (std::size_t k = 0; k < dim; ++k) {
        const double d = (*m)(r, k) - norm.mean[k];
        norm.stddev[k] += d * d;
      }
  for (double &v : norm.stddev) {
    v = std::sqrt(v / static_cast<double>(count));
    if (!(v > 1e-12)) v = 1.0;
  }
  return norm;
}

FeatureNormalizer FeatureNormalizer::Identity(std::size_t dim) {
  return {std::vector<double>(dim, 0.0), std::vector<double>(dim, 1.0)};
}

std::vector<double> FeatureNormalizer::Apply(std::span<const double> row) const {
  if (row.size() != dim())
    throw Error(ErrorCategory::kDimensionMismatch,
                "feature has K=" + std::to_string(row.size()) + ", model expects K=" + std::to_string(dim()));
  std::vector<double> out(row.size());
  for (std::size_t k = 0; k < row.size(); ++k) out[k] = (row[k] - mean[k]) / stddev[k];
  return out;
}

HoldoutSplit SplitHoldout(std::size_t n, double fraction, nn::Rng &rng) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::size_t held = 0;
  if (fraction > 0.0 && n >= 2) {
    held = static_cast<std::size_t>(std::floor(static_cast<double>(n) * fraction));
    held = std::clamp<std::size_t>(held, 1, n - 1);
  }
  HoldoutSplit split;
  split.heldout.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(held));
  split.train.assign(order.begin() + static_cast<std::ptrdiff_t>(held), order.end());
  std::sort(split.heldout.begin(), split.heldout.end());
  std::sort(split.train.begin(), split.train.end());
  return split;
}

}  // namespace pmkit
