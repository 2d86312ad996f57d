// oracles.h

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

// Independent reference computations used by the unit and acceptance tests.
// Nothing here calls into the code path it is used to check.

#ifndef PMKIT_TESTS_ORACLES_H_
#define PMKIT_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "pmkit/neural.h"

namespace pmkit::testing {

using Rows = std::vector<std::vector<double>>;

inline std::vector<double> RandomDistribution(std::size_t k, std::mt19937_64 &rng, double concentration = 1.0) {
  std::gamma_distribution<double> g(concentration, 1.0);
  std::vector<double> p(k);
  double total = 0.0;
  for (double &v : p) {
    v = g(rng) + 1e-300;
    total += v;
  }
  for (double &v : p) v /= total;
  return p;
}

/// Long-double entropy, skipping entries at or below the floor.
inline long double EntropyOracle(const std::vector<double> &p, double floor = 1e-10) {
  long double h = 0.0L;
  for (double v : p)
    if (v > floor) h -= static_cast<long double>(v) * std::log(static_cast<long double>(v));
  return h;
}

/// Evaluated literally as D(p||q) + D(q||p), with the floor applied
/// inside the logarithms, in long double.
inline long double SklOracle(const std::vector<double> &p, const std::vector<double> &q, double floor = 1e-10) {
  long double d = 0.0L;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const long double lp = std::log(static_cast<long double>(std::max(p[k], floor)));
    const long double lq = std::log(static_cast<long double>(std::max(q[k], floor)));
    d += static_cast<long double>(p[k]) * (lp - lq);
    d += static_cast<long double>(q[k]) * (lq - lp);
  }
  return d;
}

/// Enumerates every ordered pair (i, j), i < j, whose offset j - i is one of
/// the windows, and averages the divergence over all such pairs.
inline double McdBruteForce(const Rows &rows, const std::vector<int> &windows) {
  const std::set<int> allowed(windows.begin(), windows.end());
  long double total = 0.0L;
  std::size_t pairs = 0;
  for (std::size_t j = 0; j < rows.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (!allowed.count(static_cast<int>(j - i))) continue;
      total += SklOracle(rows[i], rows[j]);
      ++pairs;
    }
  }
  return static_cast<double>(total / static_cast<long double>(pairs));
}

/// Solves the 2x2 normal equations [n Sx; Sx Sxx][b; a] = [Sy; Sxy] by
/// Cramer's rule in long double. Returns (a, b).
inline std::pair<double, double> NormalEquations(const std::vector<double> &x, const std::vector<double> &y) {
  long double n = static_cast<long double>(x.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += static_cast<long double>(x[i]) * x[i];
    sxy += static_cast<long double>(x[i]) * y[i];
  }
  const long double det = n * sxx - sx * sx;
  const long double a = (n * sxy - sx * sy) / det;
  const long double b = (sxx * sy - sx * sxy) / det;
  return {static_cast<double>(a), static_cast<double>(b)};
}

struct GradCheckResult {
  double max_rel_error = 0.0;
  std::size_t checked = 0;
};

/// |a - n| / max(|a|, |n|, floor). The floor keeps near-zero gradients from
/// turning finite-difference rounding noise into large relative errors.
inline double RelativeError(double analytic, double numeric, double floor = 1e-6) {
  return std::abs(analytic - numeric) / std::max({std::abs(analytic), std::abs(numeric), floor});
}

/// Compares reverse-mode gradients of a scalar graph against central finite
/// differences, for every leaf input entry and every parameter entry.
/// `build` receives the graph and one Var per entry of `inputs`.
using GraphBuilder = std::function<nn::Var(nn::Graph &, const std::vector<nn::Var> &)>;

inline GradCheckResult CheckGradients(const GraphBuilder &build, Rows inputs, std::vector<nn::Tensor *> params,
                                      double step = 1e-5) {
  auto evaluate = [&]() {
    nn::Graph g;
    std::vector<nn::Var> vars;
    for (const auto &in : inputs) vars.push_back(g.Input(in));
    return g.scalar(build(g, vars));
  };

  nn::Graph g;
  std::vector<nn::Var> vars;
  for (const auto &in : inputs) vars.push_back(g.Input(in));
  nn::Var out = build(g, vars);
  g.Backward(out);

  GradCheckResult result;
  auto probe = [&](double &slot, double analytic) {
    const double saved = slot;
    slot = saved + step;
    const double up = evaluate();
    slot = saved - step;
    const double down = evaluate();
    slot = saved;
    const double numeric = (up - down) / (2.0 * step);
    result.max_rel_error = std::max(result.max_rel_error, RelativeError(analytic, numeric));
    ++result.checked;
  };

  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const std::vector<double> analytic(g.grad(vars[i]).begin(), g.grad(vars[i]).end());
    for (std::size_t k = 0; k < inputs[i].size(); ++k) probe(inputs[i][k], analytic[k]);
  }
  for (nn::Tensor *p : params) {
    const auto pg = g.ParamGrad(*p);
    const std::vector<double> analytic =
        pg.empty() ? std::vector<double>(p->size(), 0.0) : std::vector<double>(pg.begin(), pg.end());
    for (std::size_t k = 0; k < p->size(); ++k) probe(p->value[k], analytic[k]);
  }
  return result;
}

inline std::vector<double> RandomVector(std::size_t n, std::mt19937_64 &rng, double scale = 1.0) {
  std::normal_distribution<double> d(0.0, scale);
  std::vector<double> v(n);
  for (double &x : v) x = d(rng);
  return v;
}

}  // namespace pmkit::testing

#endif  // PMKIT_TESTS_ORACLES_H_
