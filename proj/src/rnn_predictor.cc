// rnn_predictor.cc

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

#include "pmkit/rnn_predictor.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "pmkit/error.h"

namespace pmkit {

namespace {

constexpr const char *kKind = "rnn-predictor";

double Predict(const RnnModel &model, const Matrix &normalized) {
  nn::Graph g;
  return g.scalar(model.Build(g, normalized));
}

double MeanLoss(const RnnModel &model, const std::vector<Matrix> &inputs,
                const std::vector<double> &targets) {
  if (inputs.empty()) return std::numeric_limits<double>::quiet_NaN();
  double total = 0.0;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const double d = Predict(model, inputs[i]) - targets[i];
    total += d * d;
  }
  return total / static_cast<double>(inputs.size());
}

}  // namespace

RnnConfig RnnConfig::FullScale() {
  RnnConfig c;
  c.hidden_units = 320;
  c.linear_width = 300;
  return c;
}

void RnnConfig::Check() const {
  if (layers == 0) throw Error(ErrorCategory::kInvalidConfig, "at least one BLSTM layer is required");
  if (hidden_units == 0 || linear_width == 0)
    throw Error(ErrorCategory::kInvalidConfig, "layer widths must be positive");
  if (epochs == 0) throw Error(ErrorCategory::kInvalidConfig, "epochs must be at least 1");
  if (batch_size == 0) throw Error(ErrorCategory::kInvalidConfig, "batch size must be at least 1");
  if (!(learning_rate > 0.0)) throw Error(ErrorCategory::kInvalidConfig, "learning rate must be positive");
  if (!(clip_norm > 0.0)) throw Error(ErrorCategory::kInvalidConfig, "clip norm must be positive");
  if (validation_fraction < 0.0 || validation_fraction >= 1.0)
    throw Error(ErrorCategory::kInvalidConfig, "validation fraction must be in [0, 1)");
}

RnnModel RnnModel::Create(const RnnConfig &config, FeatureNormalizer norm, nn::Rng &rng) {
  config.Check();
  RnnModel model;
  model.config = config;
  model.config.input_dim = norm.dim();
  model.norm = std::move(norm);
  std::size_t in = model.config.input_dim;
  for (std::size_t l = 0; l < config.layers; ++l) {
    nn::LstmCell fwd = nn::LstmCell::Create(in, config.hidden_units, rng);
    nn::LstmCell bwd = nn::LstmCell::Create(in, config.hidden_units, rng);
    model.blstm.emplace_back(std::move(fwd), std::move(bwd));
    in = 2 * config.hidden_units;
  }
  model.linear = nn::Dense::Create(in, config.linear_width, rng);
  model.output = nn::Dense::Create(config.linear_width, 1, rng);
  return model;
}

std::vector<nn::Tensor *> RnnModel::Parameters() {
  std::vector<nn::Tensor *> params;
  for (auto &[fwd, bwd] : blstm) {
    for (nn::LstmCell *cell : {&fwd, &bwd}) {
      params.push_back(&cell->w_input);
      params.push_back(&cell->w_hidden);
      params.push_back(&cell->bias);
    }
  }
  for (nn::Dense *d : {&linear, &output}) {
    params.push_back(&d->weight);
    params.push_back(&d->bias);
  }
  return params;
}

nn::Var RnnModel::Build(nn::Graph &g, const Matrix &normalized) const {
  if (normalized.rows() == 0) throw Error(ErrorCategory::kTooShort, "rnn predictor needs at least one step");
  if (normalized.cols() != config.input_dim)
    throw Error(ErrorCategory::kDimensionMismatch, "feature K=" + std::to_string(normalized.cols()) +
                                                       ", model expects K=" + std::to_string(config.input_dim));
  std::vector<nn::Var> seq;
  seq.reserve(normalized.rows());
  for (std::size_t t = 0; t < normalized.rows(); ++t) {
    std::span<const double> row = normalized.row(t);
    seq.push_back(g.Input(std::vector<double>(row.begin(), row.end())));
  }
  for (const auto &[fwd, bwd] : blstm) seq = nn::SubsampleHalf(nn::Blstm(g, fwd, bwd, seq));
  nn::Var pooled = nn::MeanPool(g, seq);
  return g.Relu(output.Apply(g, linear.Apply(g, pooled)));
}

Matrix NormalizeFeatures(const RnnModel &model, const Matrix &presoftmax) {
  Matrix out(presoftmax.rows(), presoftmax.cols());
  for (std::size_t r = 0; r < presoftmax.rows(); ++r) {
    const std::vector<double> row = model.norm.Apply(presoftmax.row(r));
    std::copy(row.begin(), row.end(), out.row(r).begin());
  }
  return out;
}

double RnnForward(const RnnModel &model, const UtteranceRecord &record) {
  if (!record.presoftmax) throw Error(ErrorCategory::kMissingFeature, "rnn predictor needs presoftmax");
  return Predict(model, NormalizeFeatures(model, *record.presoftmax));
}

RnnModel TrainRnn(const Corpus &corpus, const RnnConfig &config, TrainHistory *history) {
  config.Check();
  if (corpus.records.empty()) throw Error(ErrorCategory::kEmptyInput, "rnn training corpus is empty");
  for (const UtteranceRecord &rec : corpus.records) {
    if (!rec.presoftmax) throw Error(ErrorCategory::kMissingFeature, rec.id + ": rnn predictor needs presoftmax");
    if (!rec.cer) throw Error(ErrorCategory::kCerRequired, rec.id + ": rnn training needs a known cer");
    if (rec.presoftmax->rows() == 0) throw Error(ErrorCategory::kTooShort, rec.id + ": empty presoftmax");
  }
  const std::size_t dim = corpus.records.front().presoftmax->cols();
  if (config.input_dim != 0 && config.input_dim != dim)
    throw Error(ErrorCategory::kDimensionMismatch, "corpus K=" + std::to_string(dim) +
                                                       " but config input_dim=" + std::to_string(config.input_dim));

  nn::Rng rng(config.seed);
  const HoldoutSplit split = SplitHoldout(corpus.records.size(), config.validation_fraction, rng);
  std::vector<const Matrix *> train_mats;
  for (std::size_t i : split.train) train_mats.push_back(&*corpus.records[i].presoftmax);

  RnnModel model = RnnModel::Create(config, FeatureNormalizer::Fit(train_mats), rng);

  auto collect = [&](const std::vector<std::size_t> &idx, std::vector<Matrix> *x, std::vector<double> *y) {
    for (std::size_t i : idx) {
      x->push_back(NormalizeFeatures(model, *corpus.records[i].presoftmax));
      y->push_back(*corpus.records[i].cer);
    }
  };
  std::vector<Matrix> train_x, val_x;
  std::vector<double> train_y, val_y;
  collect(split.train, &train_x, &train_y);
  collect(split.heldout, &val_x, &val_y);

  model.output.bias.value[0] = std::accumulate(train_y.begin(), train_y.end(), 0.0) /
                               static_cast<double>(train_y.size());

  TrainHistory local;
  TrainHistory &hist = history ? *history : local;
  hist = {};
  hist.train_loss.push_back(MeanLoss(model, train_x, train_y));
  if (!val_x.empty()) hist.validation_loss.push_back(MeanLoss(model, val_x, val_y));

  std::vector<nn::Tensor *> params = model.Parameters();
  nn::AdamState adam;
  const nn::AdamOptions adam_opts{config.learning_rate};
  RnnModel best = model;
  double best_val = val_x.empty() ? 0.0 : hist.validation_loss.front();
  std::size_t since_best = 0;

  std::vector<std::size_t> order(train_x.size());
  std::iota(order.begin(), order.end(), 0);

  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      for (nn::Tensor *p : params) p->ZeroGrad();
      for (std::size_t j = start; j < end; ++j) {
        nn::Graph g;
        nn::Var pred = model.Build(g, train_x[order[j]]);
        g.Backward(g.Mse(pred, g.Input({train_y[order[j]]})));
        nn::AccumulateGrads(g, params);
      }
      const double inv = 1.0 / static_cast<double>(end - start);
      for (nn::Tensor *p : params)
        for (double &gk : p->grad) gk *= inv;
      nn::ClipGradNorm(params, config.clip_norm);
      nn::AdamStep(params, adam, adam_opts);
    }

    hist.train_loss.push_back(MeanLoss(model, train_x, train_y));
    if (val_x.empty()) {
      hist.best_epoch = epoch;
      continue;
    }
    const double val = MeanLoss(model, val_x, val_y);
    hist.validation_loss.push_back(val);
    if (val < best_val) {
      best_val = val;
      best = model;
      hist.best_epoch = epoch;
      since_best = 0;
    } else if (++since_best >= config.patience) {
      hist.stopped_early = true;
      break;
    }
  }
  if (!val_x.empty()) model = std::move(best);
  for (nn::Tensor *p : model.Parameters()) p->ZeroGrad();
  return model;
}

Checkpoint RnnToCheckpoint(const RnnModel &model) {
  Checkpoint ckpt;
  ckpt.kind = kKind;
  const RnnConfig &c = model.config;
  ckpt.meta["input_dim"] = c.input_dim;
  ckpt.meta["layers"] = c.layers;
  ckpt.meta["hidden_units"] = c.hidden_units;
  ckpt.meta["linear_width"] = c.linear_width;
  ckpt.meta["epochs"] = c.epochs;
  ckpt.meta["batch_size"] = c.batch_size;
  ckpt.meta["seed"] = c.seed;
  ckpt.meta["learning_rate"] = c.learning_rate;
  ckpt.meta["clip_norm"] = c.clip_norm;
  ckpt.meta["validation_fraction"] = c.validation_fraction;
  ckpt.meta["patience"] = c.patience;
  ckpt.meta["norm_mean"] = model.norm.mean;
  ckpt.meta["norm_std"] = model.norm.stddev;
  for (std::size_t l = 0; l < model.blstm.size(); ++l) {
    const auto &[fwd, bwd] = model.blstm[l];
    for (const auto &[dir, cell] : {std::pair<const char *, const nn::LstmCell *>{"fwd", &fwd}, {"bwd", &bwd}}) {
      const std::string prefix = "blstm" + std::to_string(l) + "." + dir + ".";
      ckpt.tensors.emplace_back(prefix + "w_input", cell->w_input);
      ckpt.tensors.emplace_back(prefix + "w_hidden", cell->w_hidden);
      ckpt.tensors.emplace_back(prefix + "bias", cell->bias);
    }
  }
  ckpt.tensors.emplace_back("linear.weight", model.linear.weight);
  ckpt.tensors.emplace_back("linear.bias", model.linear.bias);
  ckpt.tensors.emplace_back("output.weight", model.output.weight);
  ckpt.tensors.emplace_back("output.bias", model.output.bias);
  return ckpt;
}

RnnModel RnnFromCheckpoint(const Checkpoint &ckpt) {
  if (ckpt.kind != kKind) throw Error(ErrorCategory::kCheckpoint, "checkpoint kind is '" + ckpt.kind + "', expected rnn-predictor");
  RnnModel model;
  try {
    RnnConfig &c = model.config;
    c.input_dim = ckpt.meta.at("input_dim").get<std::size_t>();
    c.layers = ckpt.meta.at("layers").get<std::size_t>();
    c.hidden_units = ckpt.meta.at("hidden_units").get<std::size_t>();
    c.linear_width = ckpt.meta.at("linear_width").get<std::size_t>();
    c.epochs = ckpt.meta.at("epochs").get<std::size_t>();
    c.batch_size = ckpt.meta.at("batch_size").get<std::size_t>();
    c.seed = ckpt.meta.at("seed").get<std::uint64_t>();
    c.learning_rate = ckpt.meta.at("learning_rate").get<double>();
    c.clip_norm = ckpt.meta.at("clip_norm").get<double>();
    c.validation_fraction = ckpt.meta.at("validation_fraction").get<double>();
    c.patience = ckpt.meta.at("patience").get<std::size_t>();
    model.norm.mean = ckpt.meta.at("norm_mean").get<std::vector<double>>();
    model.norm.stddev = ckpt.meta.at("norm_std").get<std::vector<double>>();
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCategory::kCheckpoint, std::string("bad rnn metadata: ") + e.what());
  }
  for (std::size_t l = 0; l < model.config.layers; ++l) {
    auto load = [&](const char *dir) {
      const std::string prefix = "blstm" + std::to_string(l) + "." + dir + ".";
      return nn::LstmCell{ckpt.Get(prefix + "w_input"), ckpt.Get(prefix + "w_hidden"), ckpt.Get(prefix + "bias")};
    };
    model.blstm.emplace_back(load("fwd"), load("bwd"));
  }
  model.linear = {ckpt.Get("linear.weight"), ckpt.Get("linear.bias")};
  model.output = {ckpt.Get("output.weight"), ckpt.Get("output.bias")};
  if (model.norm.dim() != model.config.input_dim || model.blstm.empty() ||
      model.blstm.front().first.input_dim() != model.config.input_dim || model.output.out_dim() != 1)
    throw Error(ErrorCategory::kCheckpoint, "rnn checkpoint shapes are inconsistent");
  return model;
}

void SaveRnn(const RnnModel &model, const std::string &path) { SaveCheckpoint(RnnToCheckpoint(model), path); }

RnnModel LoadRnn(const std::string &path) { return RnnFromCheckpoint(LoadCheckpoint(path)); }

}  // namespace pmkit
