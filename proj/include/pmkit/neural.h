// neural.h

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

#ifndef PMKIT_NEURAL_H_
#define PMKIT_NEURAL_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <unordered_map>
#include <vector>

namespace pmkit::nn {

using Rng = std::mt19937_64;

/// A trainable parameter: values plus an accumulated gradient of equal size.
/// Shape is [rows] for vectors and [rows, cols] (row-major) for matrices.
struct Tensor {
  std::vector<std::size_t> shape;
  std::vector<double> value;
  std::vector<double> grad;

  Tensor() = default;
  explicit Tensor(std::vector<std::size_t> dims);

  std::size_t size() const { return value.size(); }
  std::size_t rows() const { return shape.empty() ? 0 : shape[0]; }
  std::size_t cols() const { return shape.size() > 1 ? shape[1] : 1; }

  void ZeroGrad();
  /// Uniform in [-1/sqrt(fan_in), +1/sqrt(fan_in)].
  void InitUniform(std::size_t fan_in, Rng &rng);

  bool operator==(const Tensor &other) const {
    return shape == other.shape && value == other.value;
  }
};

/// Handle to a node in a Graph.
struct Var {
  std::size_t id = 0;
};

/// Reverse-mode automatic differentiation tape. Nodes are appended in
/// evaluation order, so Backward() is a single reverse sweep. Parameters are
/// referenced, not copied; their gradients are read back with ParamGrad().
class Graph {
 public:
  Graph() { nodes_.reserve(256); }

  Var Input(std::vector<double> values);
  Var Param(const Tensor &tensor);

  Var MatVec(Var matrix, Var x);
  Var Add(Var a, Var b);
  Var Mul(Var a, Var b);
  Var Sigmoid(Var a);
  Var Tanh(Var a);
  Var Relu(Var a);
  Var Concat(Var a, Var b);
  Var Slice(Var a, std::size_t offset, std::size_t length);
  Var Mean(std::span<const Var> xs);
  /// Mean of squared differences, a scalar node.
  Var Mse(Var prediction, Var target);

  std::span<const double> value(Var v) const;
  std::span<const double> grad(Var v) const;
  double scalar(Var v) const { return value(v)[0]; }

  /// Seeds d(output)/d(output) = 1 for a scalar output and propagates.
  void Backward(Var output);

  /// Gradient accumulated for a parameter during Backward(); empty span if
  /// the parameter was never used in this graph.
  std::span<const double> ParamGrad(const Tensor &tensor) const;

  std::size_t size() const { return nodes_.size(); }

 private:
  enum class Op { kInput, kParam, kMatVec, kAdd, kMul, kSigmoid, kTanh, kRelu, kConcat, kSlice, kMean, kMse };

  struct Node {
    explicit Node(Op o) : op(o) {}
    Op op;
    std::size_t rows = 0;
    std::size_t cols = 1;
    std::size_t a = 0;
    std::size_t b = 0;
    std::size_t offset = 0;
    std::vector<std::size_t> inputs;
    const Tensor *param = nullptr;
    std::vector<double> value;
    std::vector<double> grad;
  };

  Var Push(Node node);
  std::span<const double> Values(std::size_t id) const;
  std::size_t Length(std::size_t id) const { return nodes_[id].rows * nodes_[id].cols; }

  std::vector<Node> nodes_;
  std::unordered_map<const Tensor *, std::size_t> params_;
};

/// Affine layer y = W x + b with W of shape [out, in].
struct Dense {
  Tensor weight;
  Tensor bias;

  static Dense Create(std::size_t in, std::size_t out, Rng &rng);
  std::size_t in_dim() const { return weight.cols(); }
  std::size_t out_dim() const { return weight.rows(); }
  Var Apply(Graph &g, Var x) const;
};

/// LSTM cell parameters. Gate blocks are stacked in the order input, forget,
/// cell candidate, output: rows [0,H), [H,2H), [2H,3H), [3H,4H).
struct LstmCell {
  Tensor w_input;   // [4H, input_dim]
  Tensor w_hidden;  // [4H, H]
  Tensor bias;      // [4H]

  /// Uniform init with fan_in = input_dim + hidden_dim; forget bias 1.0.
  static LstmCell Create(std::size_t input_dim, std::size_t hidden_dim, Rng &rng);
  std::size_t input_dim() const { return w_input.cols(); }
  std::size_t hidden_dim() const { return w_hidden.cols(); }
};

struct LstmState {
  Var h;
  Var c;
};

LstmState ZeroState(Graph &g, std::size_t hidden_dim);
LstmState LstmStep(Graph &g, const LstmCell &cell, Var x, LstmState prev);

/// Runs `forward` over the sequence and `backward` over its reversal, and
/// returns [h_fwd(t); h_bwd(t)] per step. Throws on an empty sequence.
std::vector<Var> Blstm(Graph &g, const LstmCell &forward, const LstmCell &backward,
                       std::span<const Var> sequence);

/// Keeps steps 0, 2, 4, ... (ceil(L/2) outputs).
std::vector<Var> SubsampleHalf(std::span<const Var> sequence);

Var MeanPool(Graph &g, std::span<const Var> sequence);

struct AdamOptions {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct AdamState {
  std::vector<std::vector<double>> m;
  std::vector<std::vector<double>> v;
  std::int64_t step = 0;
};

/// One bias-corrected Adam update using each tensor's accumulated grad.
void AdamStep(std::span<Tensor *const> params, AdamState &state, const AdamOptions &options);

double GlobalGradNorm(std::span<Tensor *const> params);

/// Rescales all gradients so their joint L2 norm is at most max_norm.
void ClipGradNorm(std::span<Tensor *const> params, double max_norm);

/// Adds every parameter gradient recorded in `g` into the tensors' grads.
void AccumulateGrads(const Graph &g, std::span<Tensor *const> params);

}  // namespace pmkit::nn

#endif  // PMKIT_NEURAL_H_
