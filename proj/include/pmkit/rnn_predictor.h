// rnn_predictor.h

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

#ifndef PMKIT_RNN_PREDICTOR_H_
#define PMKIT_RNN_PREDICTOR_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pmkit/checkpoint.h"
#include "pmkit/datamodel.h"
#include "pmkit/neural.h"
#include "pmkit/training.h"

namespace pmkit {

struct RnnConfig {
  std::size_t input_dim = 0;  // 0: taken from the training corpus
  std::size_t layers = 2;
  std::size_t hidden_units = 32;
  std::size_t linear_width = 32;
  std::size_t epochs = 40;
  std::size_t batch_size = 8;
  std::uint64_t seed = 1;
  double learning_rate = 1e-3;
  double clip_norm = 5.0;
  double validation_fraction = 0.1;
  std::size_t patience = 10;

  /// 2 BLSTM layers of 320 units and a 300-unit linear layer.
  static RnnConfig FullScale();
  static RnnConfig DeskScale() { return RnnConfig{}; }

  void Check() const;
};

/// Sequence regressor from presoftmax activations to CER:
///
///   normalise -> [BLSTM -> keep even steps] x layers -> mean-pool
///             -> linear(linear_width) -> linear(1) -> ReLU
struct RnnModel {
  RnnConfig config;
  FeatureNormalizer norm;
  std::vector<std::pair<nn::LstmCell, nn::LstmCell>> blstm;  // (forward, backward)
  nn::Dense linear;
  nn::Dense output;

  static RnnModel Create(const RnnConfig &config, FeatureNormalizer norm, nn::Rng &rng);

  std::vector<nn::Tensor *> Parameters();

  /// Builds the prediction node for one normalised feature sequence.
  nn::Var Build(nn::Graph &g, const Matrix &normalized) const;
};

/// Normalises a presoftmax matrix with the model's statistics.
Matrix NormalizeFeatures(const RnnModel &model, const Matrix &presoftmax);

/// Predicted CER (>= 0) for one record.
double RnnForward(const RnnModel &model, const UtteranceRecord &record);

/// MSE training on (presoftmax, cer) pairs with Adam, global-norm clipping,
/// and early stopping on a held-out fraction of utterances. The output bias
/// starts at the mean training CER.
RnnModel TrainRnn(const Corpus &corpus, const RnnConfig &config, TrainHistory *history = nullptr);

Checkpoint RnnToCheckpoint(const RnnModel &model);
RnnModel RnnFromCheckpoint(const Checkpoint &checkpoint);

void SaveRnn(const RnnModel &model, const std::string &path);
RnnModel LoadRnn(const std::string &path);

}  // namespace pmkit

#endif  // PMKIT_RNN_PREDICTOR_H_
