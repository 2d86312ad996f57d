// training.h

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

#ifndef PMKIT_TRAINING_H_
#define PMKIT_TRAINING_H_

#include <cstddef>
#include <span>
#include <vector>

#include "pmkit/datamodel.h"
#include "pmkit/neural.h"

namespace pmkit {

/// Per-dimension standardisation (x - mean) / std. Dimensions with zero
/// spread get std 1 so that std stays strictly positive.
struct FeatureNormalizer {
  std::vector<double> mean;
  std::vector<double> stddev;

  /// Population statistics over every row of every matrix.
  static FeatureNormalizer Fit(std::span<const Matrix *const> matrices);
  static FeatureNormalizer Identity(std::size_t dim);

  std::size_t dim() const { return mean.size(); }
  std::vector<double> Apply(std::span<const double> row) const;
};

/// Loss curve of a training run. train_loss[0] and validation_loss[0] are
/// evaluated before the first update; entry e is the loss after epoch e.
struct TrainHistory {
  std::vector<double> train_loss;
  std::vector<double> validation_loss;
  std::size_t best_epoch = 0;
  bool stopped_early = false;
};

/// Deterministically shuffles indices 0..n-1 and moves floor(n * fraction)
/// of them (at least one when fraction > 0 and n >= 2) into the held-out set.
struct HoldoutSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> heldout;
};
HoldoutSplit SplitHoldout(std::size_t n, double fraction, nn::Rng &rng);

}  // namespace pmkit

#endif  // PMKIT_TRAINING_H_
