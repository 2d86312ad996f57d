// synthcorpus.cc

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

#include "pmkit/synthcorpus.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "pmkit/error.h"

namespace pmkit {

void SynthConfig::Check() const {
  auto fail = [](const std::string &msg) { throw Error(ErrorCategory::kInvalidConfig, msg); };
  if (alphabet_size < 2) fail("alphabet size must be at least 2");
  if (min_length == 0 || min_length > max_length) fail("length range must be nonempty and start at 1 or more");
  if (min_frames < 2 || min_frames > max_frames) fail("frame range must be nonempty and start at 2 or more");
  if (!(min_corruption >= 0.0 && max_corruption <= 1.0 && min_corruption <= max_corruption))
    fail("corruption range must lie within [0, 1]");
  if (!(cer_noise_std >= 0.0) || !(logit_noise >= 0.0)) fail("noise scales must be nonnegative");
  if (!(sharpness > 0.0)) fail("sharpness must be positive");
  if (!(attention_width > 0.0)) fail("attention width must be positive");
  if (split && !(train_fraction >= 0.0 && dev_fraction >= 0.0 && train_fraction + dev_fraction <= 1.0))
    fail("split fractions must be nonnegative and sum to at most 1");
  if (tag.empty()) fail("dataset tag must not be empty");
}

Corpus Generate(const SynthConfig &config, std::vector<double> *corruption) {
  config.Check();
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> gamma_dist(config.min_corruption, config.max_corruption);
  std::uniform_int_distribution<std::size_t> length_dist(config.min_length, config.max_length);
  std::uniform_int_distribution<std::size_t> frames_dist(config.min_frames, config.max_frames);
  std::uniform_int_distribution<std::size_t> label_dist(0, config.alphabet_size - 1);
  std::normal_distribution<double> normal(0.0, 1.0);

  const std::size_t n = config.n_utterances;
  const auto n_train = static_cast<std::size_t>(std::llround(static_cast<double>(n) * config.train_fraction));
  const auto n_dev = std::min(n - std::min(n, n_train),
                              static_cast<std::size_t>(std::llround(static_cast<double>(n) * config.dev_fraction)));

  Corpus corpus;
  corpus.records.reserve(n);
  if (corruption) corruption->clear();
  const std::size_t k_dim = config.alphabet_size;

  for (std::size_t i = 0; i < n; ++i) {
    const double gamma = config.min_corruption == config.max_corruption ? config.min_corruption : gamma_dist(rng);
    const std::size_t length = length_dist(rng);
    const std::size_t frames = frames_dist(rng);

    UtteranceRecord rec;
    char id[64];
    std::snprintf(id, sizeof id, "%s-%06zu", config.tag.c_str(), i);
    rec.id = id;
    if (!config.split) {
      rec.dataset = config.tag;
    } else {
      const char *part = i < n_train ? "train" : (i < n_train + n_dev ? "dev" : "test");
      rec.dataset = config.tag + "-" + part;
    }

    Matrix logits(length, k_dim);
    Matrix post(length, k_dim);
    const double peak = (1.0 - gamma) * config.sharpness;
    const double noise = gamma * config.logit_noise;
    for (std::size_t l = 0; l < length; ++l) {
      const std::size_t label = label_dist(rng);
      for (std::size_t k = 0; k < k_dim; ++k) {
        logits(l, k) = (k == label ? peak : 0.0) + noise * normal(rng);
      }
      const std::vector<double> p = Softmax(logits.row(l));
      std::copy(p.begin(), p.end(), post.row(l).begin());
    }

    Matrix attention(length, frames);
    const double spacing = static_cast<double>(frames) / static_cast<double>(length);
    const double width = config.attention_width;
    for (std::size_t l = 0; l < length; ++l) {
      const double centre = (static_cast<double>(l) + 0.5) * spacing - 0.5;
      double total = 0.0;
      std::span<double> row = attention.row(l);
      for (std::size_t t = 0; t < frames; ++t) {
        const double z = (static_cast<double>(t) - centre) / width;
        row[t] = std::exp(-0.5 * z * z);
        total += row[t];
      }
      const double uniform = 1.0 / static_cast<double>(frames);
      for (double &v : row) v = (1.0 - gamma) * (v / total) + gamma * uniform;
    }

    const double cer_noise = config.cer_noise_std > 0.0 ? config.cer_noise_std * normal(rng) : 0.0;
    rec.cer = std::max(0.0, gamma * gamma + cer_noise);
    rec.attention = std::move(attention);
    rec.decoder_post = std::move(post);
    rec.presoftmax = std::move(logits);
    corpus.records.push_back(std::move(rec));
    if (corruption) corruption->push_back(gamma);
  }
  return corpus;
}

Corpus FilterDataset(const Corpus &corpus, const std::string &dataset) {
  Corpus out;
  for (const UtteranceRecord &rec : corpus.records)
    if (rec.dataset == dataset) out.records.push_back(rec);
  return out;
}

}  // namespace pmkit
