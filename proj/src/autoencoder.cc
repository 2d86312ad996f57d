// autoencoder.cc

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

#include "pmkit/autoencoder.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pmkit/error.h"

namespace pmkit {

namespace {

constexpr const char *kKind = "autoencoder";

double FrameMse(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) acc += (a[k] - b[k]) * (a[k] - b[k]);
  return acc / static_cast<double>(a.size());
}

double MeanLoss(const AeModel &model, const std::vector<std::vector<double>> &frames) {
  if (frames.empty()) return std::numeric_limits<double>::quiet_NaN();
  double total = 0.0;
  for (const auto &f : frames) total += FrameMse(model.Reconstruct(f), f);
  return total / static_cast<double>(frames.size());
}

}  // namespace

AeConfig AeConfig::FullScale() {
  AeConfig c;
  c.hidden = {512, 512, 24, 512};
  return c;
}

void AeConfig::Check() const {
  if (hidden.empty()) throw Error(ErrorCategory::kInvalidConfig, "autoencoder needs at least one hidden layer");
  if (std::any_of(hidden.begin(), hidden.end(), [](std::size_t w) { return w == 0; }))
    throw Error(ErrorCategory::kInvalidConfig, "hidden widths must be positive");
  if (input_dim != 0 && *std::min_element(hidden.begin(), hidden.end()) >= input_dim)
    throw Error(ErrorCategory::kInvalidConfig, "bottleneck must be narrower than the input dimension");
  if (epochs == 0) throw Error(ErrorCategory::kInvalidConfig, "epochs must be at least 1");
  if (batch_size == 0) throw Error(ErrorCategory::kInvalidConfig, "batch size must be at least 1");
  if (!(learning_rate > 0.0)) throw Error(ErrorCategory::kInvalidConfig, "learning rate must be positive");
  if (validation_fraction < 0.0 || validation_fraction >= 1.0)
    throw Error(ErrorCategory::kInvalidConfig, "validation fraction must be in [0, 1)");
}

std::vector<nn::Tensor *> AeModel::Parameters() {
  std::vector<nn::Tensor *> params;
  for (nn::Dense &d : layers) {
    params.push_back(&d.weight);
    params.push_back(&d.bias);
  }
  return params;
}

std::vector<double> AeModel::Reconstruct(std::span<const double> normalized) const {
  std::vector<double> x(normalized.begin(), normalized.end());
  for (std::size_t li = 0; li < layers.size(); ++li) {
    const nn::Dense &d = layers[li];
    if (x.size() != d.in_dim()) throw Error(ErrorCategory::kDimensionMismatch, "autoencoder input size mismatch");
    std::vector<double> y(d.out_dim());
    for (std::size_t r = 0; r < y.size(); ++r) {
      const double *w = d.weight.value.data() + r * d.in_dim();
      double acc = d.bias.value[r];
      for (std::size_t c = 0; c < x.size(); ++c) acc += w[c] * x[c];
      y[r] = li + 1 < layers.size() ? std::tanh(acc) : acc;
    }
    x = std::move(y);
  }
  return x;
}

AeModel TrainAe(const Corpus &corpus, const AeConfig &config, TrainHistory *history) {
  if (corpus.records.empty()) throw Error(ErrorCategory::kEmptyInput, "autoencoder training corpus is empty");
  for (const UtteranceRecord &rec : corpus.records) {
    if (!rec.presoftmax) throw Error(ErrorCategory::kMissingFeature, rec.id + ": autoencoder needs presoftmax");
  }
  const std::size_t dim = corpus.records.front().presoftmax->cols();
  if (config.input_dim != 0 && config.input_dim != dim)
    throw Error(ErrorCategory::kDimensionMismatch, "corpus K=" + std::to_string(dim) +
                                                       " but config input_dim=" + std::to_string(config.input_dim));
  AeModel model;
  model.config = config;
  model.config.input_dim = dim;
  model.config.Check();

  nn::Rng rng(config.seed);
  const HoldoutSplit split = SplitHoldout(corpus.records.size(), config.validation_fraction, rng);

  std::vector<const Matrix *> train_mats;
  for (std::size_t i : split.train) train_mats.push_back(&*corpus.records[i].presoftmax);
  model.norm = FeatureNormalizer::Fit(train_mats);

  auto collect = [&](const std::vector<std::size_t> &idx) {
    std::vector<std::vector<double>> frames;
    for (std::size_t i : idx) {
      const Matrix &m = *corpus.records[i].presoftmax;
      if (m.cols() != dim) throw Error(ErrorCategory::kDimensionMismatch, corpus.records[i].id + ": K differs");
      for (std::size_t r = 0; r < m.rows(); ++r) frames.push_back(model.norm.Apply(m.row(r)));
    }
    return frames;
  };
  const std::vector<std::vector<double>> train_frames = collect(split.train);
  const std::vector<std::vector<double>> val_frames = collect(split.heldout);
  if (train_frames.empty()) throw Error(ErrorCategory::kEmptyInput, "no training frames");

  std::size_t prev = dim;
  for (std::size_t width : config.hidden) {
    model.layers.push_back(nn::Dense::Create(prev, width, rng));
    prev = width;
  }
  model.layers.push_back(nn::Dense::Create(prev, dim, rng));

  TrainHistory local;
  TrainHistory &hist = history ? *history : local;
  hist = {};
  hist.train_loss.push_back(MeanLoss(model, train_frames));
  if (!val_frames.empty()) hist.validation_loss.push_back(MeanLoss(model, val_frames));

  std::vector<nn::Tensor *> params = model.Parameters();
  nn::AdamState adam;
  const nn::AdamOptions adam_opts{config.learning_rate};
  std::vector<nn::Dense> best_layers = model.layers;
  double best_val = val_frames.empty() ? 0.0 : hist.validation_loss.front();
  std::size_t since_best = 0;

  std::vector<std::size_t> order(train_frames.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      for (nn::Tensor *p : params) p->ZeroGrad();
      for (std::size_t j = start; j < end; ++j) {
        nn::Graph g;
        nn::Var x = g.Input(train_frames[order[j]]);
        nn::Var h = x;
        for (std::size_t li = 0; li < model.layers.size(); ++li) {
          h = model.layers[li].Apply(g, h);
          if (li + 1 < model.layers.size()) h = g.Tanh(h);
        }
        g.Backward(g.Mse(h, x));
        nn::AccumulateGrads(g, params);
      }
      const double inv = 1.0 / static_cast<double>(end - start);
      for (nn::Tensor *p : params)
        for (double &gk : p->grad) gk *= inv;
      nn::AdamStep(params, adam, adam_opts);
    }

    hist.train_loss.push_back(MeanLoss(model, train_frames));
    if (val_frames.empty()) {
      hist.best_epoch = epoch;
      continue;
    }
    const double val = MeanLoss(model, val_frames);
    hist.validation_loss.push_back(val);
    if (val < best_val) {
      best_val = val;
      best_layers = model.layers;
      hist.best_epoch = epoch;
      since_best = 0;
    } else if (++since_best >= config.patience) {
      hist.stopped_early = true;
      break;
    }
  }
  if (!val_frames.empty()) model.layers = std::move(best_layers);
  for (nn::Tensor *p : model.Parameters()) p->ZeroGrad();
  return model;
}

double AeScore(const AeModel &model, const UtteranceRecord &record) {
  if (!record.presoftmax) throw Error(ErrorCategory::kMissingFeature, "autoencoder score needs presoftmax");
  const Matrix &m = *record.presoftmax;
  if (m.rows() == 0) throw Error(ErrorCategory::kTooShort, "record has no predictions");
  double total = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const std::vector<double> x = model.norm.Apply(m.row(r));
    total += FrameMse(model.Reconstruct(x), x);
  }
  return total / static_cast<double>(m.rows());
}

Checkpoint AeToCheckpoint(const AeModel &model) {
  Checkpoint ckpt;
  ckpt.kind = kKind;
  const AeConfig &c = model.config;
  ckpt.meta["input_dim"] = c.input_dim;
  ckpt.meta["hidden"] = c.hidden;
  ckpt.meta["activation"] = "tanh";
  ckpt.meta["epochs"] = c.epochs;
  ckpt.meta["batch_size"] = c.batch_size;
  ckpt.meta["seed"] = c.seed;
  ckpt.meta["learning_rate"] = c.learning_rate;
  ckpt.meta["validation_fraction"] = c.validation_fraction;
  ckpt.meta["patience"] = c.patience;
  ckpt.meta["norm_mean"] = model.norm.mean;
  ckpt.meta["norm_std"] = model.norm.stddev;
  for (std::size_t i = 0; i < model.layers.size(); ++i) {
    ckpt.tensors.emplace_back("layer" + std::to_string(i) + ".weight", model.layers[i].weight);
    ckpt.tensors.emplace_back("layer" + std::to_string(i) + ".bias", model.layers[i].bias);
  }
  return ckpt;
}

AeModel AeFromCheckpoint(const Checkpoint &ckpt) {
  if (ckpt.kind != kKind) throw Error(ErrorCategory::kCheckpoint, "checkpoint kind is '" + ckpt.kind + "', expected autoencoder");
  AeModel model;
  try {
    AeConfig &c = model.config;
    c.input_dim = ckpt.meta.at("input_dim").get<std::size_t>();
    c.hidden = ckpt.meta.at("hidden").get<std::vector<std::size_t>>();
    c.epochs = ckpt.meta.at("epochs").get<std::size_t>();
    c.batch_size = ckpt.meta.at("batch_size").get<std::size_t>();
    c.seed = ckpt.meta.at("seed").get<std::uint64_t>();
    c.learning_rate = ckpt.meta.at("learning_rate").get<double>();
    c.validation_fraction = ckpt.meta.at("validation_fraction").get<double>();
    c.patience = ckpt.meta.at("patience").get<std::size_t>();
    model.norm.mean = ckpt.meta.at("norm_mean").get<std::vector<double>>();
    model.norm.stddev = ckpt.meta.at("norm_std").get<std::vector<double>>();
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCategory::kCheckpoint, std::string("bad autoencoder metadata: ") + e.what());
  }
  const std::size_t num_layers = model.config.hidden.size() + 1;
  for (std::size_t i = 0; i < num_layers; ++i) {
    model.layers.push_back({ckpt.Get("layer" + std::to_string(i) + ".weight"),
                            ckpt.Get("layer" + std::to_string(i) + ".bias")});
  }
  if (model.norm.dim() != model.config.input_dim || model.layers.front().in_dim() != model.config.input_dim ||
      model.layers.back().out_dim() != model.config.input_dim)
    throw Error(ErrorCategory::kCheckpoint, "autoencoder checkpoint shapes are inconsistent");
  return model;
}

void SaveAe(const AeModel &model, const std::string &path) { SaveCheckpoint(AeToCheckpoint(model), path); }

AeModel LoadAe(const std::string &path) { return AeFromCheckpoint(LoadCheckpoint(path)); }

}  // namespace pmkit
