// autoencoder.h

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

#ifndef PMKIT_AUTOENCODER_H_
#define PMKIT_AUTOENCODER_H_

#include <cstdint>
#include <string>
#include <vector>

#include "pmkit/checkpoint.h"
#include "pmkit/datamodel.h"
#include "pmkit/neural.h"
#include "pmkit/training.h"

namespace pmkit {

/// Feed-forward autoencoder over pre-softmax activation vectors. Hidden
/// layers use tanh, the output layer is linear. `hidden` lists the widths
/// between input and output, so {512, 512, 24, 512} is five weight layers
/// K->512->512->24->512->K.
struct AeConfig {
  std::size_t input_dim = 0;  // 0: taken from the training corpus
  std::vector<std::size_t> hidden = {64, 16, 64};
  std::size_t epochs = 50;
  std::size_t batch_size = 32;
  std::uint64_t seed = 1;
  double learning_rate = 1e-3;
  double validation_fraction = 0.1;
  std::size_t patience = 10;

  static AeConfig FullScale();
  static AeConfig DeskScale() { return AeConfig{}; }

  /// Throws invalid-config when a width is zero or no layer is narrower
  /// than the input.
  void Check() const;
};

struct AeModel {
  AeConfig config;
  FeatureNormalizer norm;
  std::vector<nn::Dense> layers;

  std::vector<nn::Tensor *> Parameters();

  /// Reconstruction of an already-normalised frame.
  std::vector<double> Reconstruct(std::span<const double> normalized) const;
};

/// Trains on every presoftmax row of the corpus. Holds out a fraction of
/// utterances for early stopping and returns the best-validation weights.
AeModel TrainAe(const Corpus &corpus, const AeConfig &config, TrainHistory *history = nullptr);

/// Mean over the L steps of the per-step reconstruction MSE, measured in
/// normalised feature space.
double AeScore(const AeModel &model, const UtteranceRecord &record);

Checkpoint AeToCheckpoint(const AeModel &model);
AeModel AeFromCheckpoint(const Checkpoint &checkpoint);

void SaveAe(const AeModel &model, const std::string &path);
AeModel LoadAe(const std::string &path);

}  // namespace pmkit

#endif  // PMKIT_AUTOENCODER_H_
