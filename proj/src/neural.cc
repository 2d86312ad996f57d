// neural.cc

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

#include "pmkit/neural.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "pmkit/error.h"

namespace pmkit::nn {

namespace {

[[noreturn]] void ShapeError(const std::string &what) {
  throw Error(ErrorCategory::kDimensionMismatch, what);
}

double Sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

Tensor::Tensor(std::vector<std::size_t> dims) : shape(std::move(dims)) {
  const std::size_t n =
      std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>());
  value.assign(n, 0.0);
  grad.assign(n, 0.0);
}

void Tensor::ZeroGrad() { std::fill(grad.begin(), grad.end(), 0.0); }

void Tensor::InitUniform(std::size_t fan_in, Rng &rng) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(std::max<std::size_t>(fan_in, 1)));
  std::uniform_real_distribution<double> dist(-bound, bound);
  for (double &v : value) v = dist(rng);
}

// ---------------------------------------------------------------------------
// Graph

Var Graph::Push(Node node) {
  nodes_.push_back(std::move(node));
  return Var{nodes_.size() - 1};
}

std::span<const double> Graph::Values(std::size_t id) const {
  const Node &n = nodes_[id];
  if (n.param) return n.param->value;
  return n.value;
}

std::span<const double> Graph::value(Var v) const { return Values(v.id); }

std::span<const double> Graph::grad(Var v) const { return nodes_[v.id].grad; }

Var Graph::Input(std::vector<double> values) {
  Node n(Op::kInput);
  n.rows = values.size();
  n.value = std::move(values);
  return Push(std::move(n));
}

Var Graph::Param(const Tensor &tensor) {
  if (auto it = params_.find(&tensor); it != params_.end()) return Var{it->second};
  Node n(Op::kParam);
  n.rows = tensor.rows();
  n.cols = tensor.cols();
  n.param = &tensor;
  Var v = Push(std::move(n));
  params_.emplace(&tensor, v.id);
  return v;
}

Var Graph::MatVec(Var matrix, Var x) {
  const Node &m = nodes_[matrix.id];
  if (m.cols != Length(x.id))
    ShapeError("matvec: matrix has " + std::to_string(m.cols) + " columns, vector has " +
               std::to_string(Length(x.id)));
  const std::size_t rows = m.rows, cols = m.cols;
  std::vector<double> y(rows, 0.0);
  std::span<const double> w = Values(matrix.id), xv = Values(x.id);
  for (std::size_t r = 0; r < rows; ++r) {
    const double *wr = w.data() + r * cols;
    double acc = 0.0;
    for (std::size_t c = 0; c < cols; ++c) acc += wr[c] * xv[c];
    y[r] = acc;
  }
  Node n(Op::kMatVec);
  n.rows = rows;
  n.a = matrix.id;
  n.b = x.id;
  n.value = std::move(y);
  return Push(std::move(n));
}

Var Graph::Add(Var a, Var b) {
  if (Length(a.id) != Length(b.id)) ShapeError("add: length mismatch");
  std::span<const double> av = Values(a.id), bv = Values(b.id);
  std::vector<double> y(av.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = av[i] + bv[i];
  Node n(Op::kAdd);
  n.rows = y.size();
  n.a = a.id;
  n.b = b.id;
  n.value = std::move(y);
  return Push(std::move(n));
}

Var Graph::Mul(Var a, Var b) {
  if (Length(a.id) != Length(b.id)) ShapeError("mul: length mismatch");
  std::span<const double> av = Values(a.id), bv = Values(b.id);
  std::vector<double> y(av.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = av[i] * bv[i];
  Node n(Op::kMul);
  n.rows = y.size();
  n.a = a.id;
  n.b = b.id;
  n.value = std::move(y);
  return Push(std::move(n));
}

Var Graph::Sigmoid(Var a) {
  std::span<const double> av = Values(a.id);
  std::vector<double> y(av.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = nn::Sigmoid(av[i]);
  Node n(Op::kSigmoid);
  n.rows = y.size();
  n.a = a.id;
  n.value = std::move(y);
  return Push(std::move(n));
}

Var Graph::Tanh(Var a) {
  std::span<const double> av = Values(a.id);
  std::vector<double> y(av.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = std::tanh(av[i]);
  Node n(Op::kTanh);
  n.rows = y.size();
  n.a = a.id;
  n.value = std::move(y);
  return Push(std::move(n));
}

Var Graph::Relu(Var a) {
  std::span<const double> av = Values(a.id);
  std::vector<double> y(av.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = av[i] > 0.0 ? av[i] : 0.0;
  Node n(Op::kRelu);
  n.rows = y.size();
  n.a = a.id;
  n.value = std::move(y);
  return Push(std::move(n));
}

Var Graph::Concat(Var a, Var b) {
  std::span<const double> av = Values(a.id), bv = Values(b.id);
  std::vector<double> y;
  y.reserve(av.size() + bv.size());
  y.insert(y.end(), av.begin(), av.end());
  y.insert(y.end(), bv.begin(), bv.end());
  Node n(Op::kConcat);
  n.rows = y.size();
  n.a = a.id;
  n.b = b.id;
  n.value = std::move(y);
  return Push(std::move(n));
}

Var Graph::Slice(Var a, std::size_t offset, std::size_t length) {
  std::span<const double> av = Values(a.id);
  if (offset + length > av.size()) ShapeError("slice out of range");
  Node n(Op::kSlice);
  n.rows = length;
  n.a = a.id;
  n.offset = offset;
  n.value.assign(av.begin() + static_cast<std::ptrdiff_t>(offset),
                 av.begin() + static_cast<std::ptrdiff_t>(offset + length));
  return Push(std::move(n));
}

Var Graph::Mean(std::span<const Var> xs) {
  if (xs.empty()) ShapeError("mean of an empty sequence");
  const std::size_t len = Length(xs[0].id);
  std::vector<double> y(len, 0.0);
  Node n(Op::kMean);
  n.inputs.reserve(xs.size());
  for (Var x : xs) {
    if (Length(x.id) != len) ShapeError("mean: length mismatch");
    std::span<const double> xv = Values(x.id);
    for (std::size_t i = 0; i < len; ++i) y[i] += xv[i];
    n.inputs.push_back(x.id);
  }
  const double inv = 1.0 / static_cast<double>(xs.size());
  for (double &v : y) v *= inv;
  n.rows = len;
  n.value = std::move(y);
  return Push(std::move(n));
}

Var Graph::Mse(Var prediction, Var target) {
  if (Length(prediction.id) != Length(target.id)) ShapeError("mse: length mismatch");
  if (Length(prediction.id) == 0) ShapeError("mse of empty vectors");
  std::span<const double> p = Values(prediction.id), t = Values(target.id);
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) acc += (p[i] - t[i]) * (p[i] - t[i]);
  Node n(Op::kMse);
  n.rows = 1;
  n.a = prediction.id;
  n.b = target.id;
  n.value = {acc / static_cast<double>(p.size())};
  return Push(std::move(n));
}

void Graph::Backward(Var output) {
  if (Length(output.id) != 1) ShapeError("backward needs a scalar output");
  for (std::size_t i = 0; i <= output.id; ++i) nodes_[i].grad.assign(Length(i), 0.0);
  nodes_[output.id].grad[0] = 1.0;

  for (std::size_t i = output.id + 1; i-- > 0;) {
    Node &n = nodes_[i];
    const std::vector<double> &g = n.grad;
    switch (n.op) {
      case Op::kInput:
      case Op::kParam:
        break;
      case Op::kMatVec: {
        const std::size_t rows = nodes_[n.a].rows, cols = nodes_[n.a].cols;
        std::span<const double> w = Values(n.a), x = Values(n.b);
        std::vector<double> &gw = nodes_[n.a].grad;
        std::vector<double> &gx = nodes_[n.b].grad;
        for (std::size_t r = 0; r < rows; ++r) {
          const double gr = g[r];
          if (gr == 0.0) continue;
          double *gwr = gw.data() + r * cols;
          const double *wr = w.data() + r * cols;
          for (std::size_t c = 0; c < cols; ++c) {
            gwr[c] += gr * x[c];
            gx[c] += gr * wr[c];
          }
        }
        break;
      }
      case Op::kAdd: {
        std::vector<double> &ga = nodes_[n.a].grad;
        for (std::size_t k = 0; k < g.size(); ++k) ga[k] += g[k];
        std::vector<double> &gb = nodes_[n.b].grad;
        for (std::size_t k = 0; k < g.size(); ++k) gb[k] += g[k];
        break;
      }
      case Op::kMul: {
        std::span<const double> av = Values(n.a), bv = Values(n.b);
        std::vector<double> &ga = nodes_[n.a].grad;
        for (std::size_t k = 0; k < g.size(); ++k) ga[k] += g[k] * bv[k];
        std::vector<double> &gb = nodes_[n.b].grad;
        for (std::size_t k = 0; k < g.size(); ++k) gb[k] += g[k] * av[k];
        break;
      }
      case Op::kSigmoid: {
        std::vector<double> &ga = nodes_[n.a].grad;
        for (std::size_t k = 0; k < g.size(); ++k) ga[k] += g[k] * n.value[k] * (1.0 - n.value[k]);
        break;
      }
      case Op::kTanh: {
        std::vector<double> &ga = nodes_[n.a].grad;
        for (std::size_t k = 0; k < g.size(); ++k) ga[k] += g[k] * (1.0 - n.value[k] * n.value[k]);
        break;
      }
      case Op::kRelu: {
        std::span<const double> av = Values(n.a);
        std::vector<double> &ga = nodes_[n.a].grad;
        for (std::size_t k = 0; k < g.size(); ++k)
          if (av[k] > 0.0) ga[k] += g[k];
        break;
      }
      case Op::kConcat: {
        std::vector<double> &ga = nodes_[n.a].grad;
        std::vector<double> &gb = nodes_[n.b].grad;
        for (std::size_t k = 0; k < ga.size(); ++k) ga[k] += g[k];
        for (std::size_t k = 0; k < gb.size(); ++k) gb[k] += g[ga.size() + k];
        break;
      }
      case Op::kSlice: {
        std::vector<double> &ga = nodes_[n.a].grad;
        for (std::size_t k = 0; k < g.size(); ++k) ga[n.offset + k] += g[k];
        break;
      }
      case Op::kMean: {
        const double inv = 1.0 / static_cast<double>(n.inputs.size());
        for (std::size_t src : n.inputs) {
          std::vector<double> &gs = nodes_[src].grad;
          for (std::size_t k = 0; k < g.size(); ++k) gs[k] += g[k] * inv;
        }
        break;
      }
      case Op::kMse: {
        std::span<const double> p = Values(n.a), t = Values(n.b);
        const double scale = 2.0 * g[0] / static_cast<double>(p.size());
        std::vector<double> &gp = nodes_[n.a].grad;
        std::vector<double> &gt = nodes_[n.b].grad;
        for (std::size_t k = 0; k < p.size(); ++k) {
          const double d = scale * (p[k] - t[k]);
          gp[k] += d;
          gt[k] -= d;
        }
        break;
      }
    }
  }
}

std::span<const double> Graph::ParamGrad(const Tensor &tensor) const {
  auto it = params_.find(&tensor);
  if (it == params_.end()) return {};
  return nodes_[it->second].grad;
}

// ---------------------------------------------------------------------------
// Layers

Dense Dense::Create(std::size_t in, std::size_t out, Rng &rng) {
  Dense d{Tensor({out, in}), Tensor({out})};
  d.weight.InitUniform(in, rng);
  d.bias.InitUniform(in, rng);
  return d;
}

Var Dense::Apply(Graph &g, Var x) const {
  return g.Add(g.MatVec(g.Param(weight), x), g.Param(bias));
}

LstmCell LstmCell::Create(std::size_t input_dim, std::size_t hidden_dim, Rng &rng) {
  LstmCell cell{Tensor({4 * hidden_dim, input_dim}), Tensor({4 * hidden_dim, hidden_dim}),
                Tensor({4 * hidden_dim})};
  const std::size_t fan_in = input_dim + hidden_dim;
  cell.w_input.InitUniform(fan_in, rng);
  cell.w_hidden.InitUniform(fan_in, rng);
  cell.bias.InitUniform(fan_in, rng);
  std::fill(cell.bias.value.begin() + static_cast<std::ptrdiff_t>(hidden_dim),
            cell.bias.value.begin() + static_cast<std::ptrdiff_t>(2 * hidden_dim), 1.0);
  return cell;
}

LstmState ZeroState(Graph &g, std::size_t hidden_dim) {
  return {g.Input(std::vector<double>(hidden_dim, 0.0)), g.Input(std::vector<double>(hidden_dim, 0.0))};
}

LstmState LstmStep(Graph &g, const LstmCell &cell, Var x, LstmState prev) {
  const std::size_t h = cell.hidden_dim();
  if (g.value(prev.h).size() != h || g.value(prev.c).size() != h)
    ShapeError("lstm: state size does not match hidden_dim");
  Var pre = g.Add(g.Add(g.MatVec(g.Param(cell.w_input), x), g.MatVec(g.Param(cell.w_hidden), prev.h)),
                  g.Param(cell.bias));
  Var in_gate = g.Sigmoid(g.Slice(pre, 0, h));
  Var forget_gate = g.Sigmoid(g.Slice(pre, h, h));
  Var candidate = g.Tanh(g.Slice(pre, 2 * h, h));
  Var out_gate = g.Sigmoid(g.Slice(pre, 3 * h, h));
  Var c = g.Add(g.Mul(forget_gate, prev.c), g.Mul(in_gate, candidate));
  Var hidden = g.Mul(out_gate, g.Tanh(c));
  return {hidden, c};
}

std::vector<Var> Blstm(Graph &g, const LstmCell &forward, const LstmCell &backward,
                       std::span<const Var> sequence) {
  if (sequence.empty()) ShapeError("blstm of an empty sequence");
  const std::size_t steps = sequence.size();
  std::vector<Var> fwd(steps), bwd(steps);
  LstmState state = ZeroState(g, forward.hidden_dim());
  for (std::size_t t = 0; t < steps; ++t) {
    state = LstmStep(g, forward, sequence[t], state);
    fwd[t] = state.h;
  }
  state = ZeroState(g, backward.hidden_dim());
  for (std::size_t t = steps; t-- > 0;) {
    state = LstmStep(g, backward, sequence[t], state);
    bwd[t] = state.h;
  }
  std::vector<Var> out(steps);
  for (std::size_t t = 0; t < steps; ++t) out[t] = g.Concat(fwd[t], bwd[t]);
  return out;
}

std::vector<Var> SubsampleHalf(std::span<const Var> sequence) {
  if (sequence.empty()) ShapeError("subsample of an empty sequence");
  std::vector<Var> out;
  out.reserve((sequence.size() + 1) / 2);
  for (std::size_t t = 0; t < sequence.size(); t += 2) out.push_back(sequence[t]);
  return out;
}

Var MeanPool(Graph &g, std::span<const Var> sequence) { return g.Mean(sequence); }

// ---------------------------------------------------------------------------
// Optimisation

void AdamStep(std::span<Tensor *const> params, AdamState &state, const AdamOptions &options) {
  if (state.m.size() != params.size()) {
    state.m.assign(params.size(), {});
    state.v.assign(params.size(), {});
    for (std::size_t i = 0; i < params.size(); ++i) {
      state.m[i].assign(params[i]->size(), 0.0);
      state.v[i].assign(params[i]->size(), 0.0);
    }
  }
  ++state.step;
  const double bc1 = 1.0 - std::pow(options.beta1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(options.beta2, static_cast<double>(state.step));
  for (std::size_t i = 0; i < params.size(); ++i) {
    Tensor &p = *params[i];
    if (state.m[i].size() != p.size()) ShapeError("adam: state does not match parameter shape");
    std::vector<double> &m = state.m[i];
    std::vector<double> &v = state.v[i];
    for (std::size_t k = 0; k < p.size(); ++k) {
      const double gk = p.grad[k];
      m[k] = options.beta1 * m[k] + (1.0 - options.beta1) * gk;
      v[k] = options.beta2 * v[k] + (1.0 - options.beta2) * gk * gk;
      const double m_hat = m[k] / bc1;
      const double v_hat = v[k] / bc2;
      p.value[k] -= options.learning_rate * m_hat / (std::sqrt(v_hat) + options.epsilon);
    }
  }
}

double GlobalGradNorm(std::span<Tensor *const> params) {
  double sq = 0.0;
  for (const Tensor *p : params)
    for (double gk : p->grad) sq += gk * gk;
  return std::sqrt(sq);
}

void ClipGradNorm(std::span<Tensor *const> params, double max_norm) {
  const double norm = GlobalGradNorm(params);
  if (norm <= max_norm || norm == 0.0) return;
  const double scale = max_norm / norm;
  for (Tensor *p : params)
    for (double &gk : p->grad) gk *= scale;
}

void AccumulateGrads(const Graph &g, std::span<Tensor *const> params) {
  for (Tensor *p : params) {
    std::span<const double> pg = g.ParamGrad(*p);
    if (pg.empty()) continue;
    for (std::size_t k = 0; k < pg.size(); ++k) p->grad[k] += pg[k];
  }
}

}  // namespace pmkit::nn
