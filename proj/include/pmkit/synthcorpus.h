// synthcorpus.h

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

#ifndef PMKIT_SYNTHCORPUS_H_
#define PMKIT_SYNTHCORPUS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "pmkit/datamodel.h"

namespace pmkit {

/// Knobs of the synthetic recognizer-output generator. Each utterance draws
/// a corruption level g uniformly from [min_corruption, max_corruption]:
///
///   presoftmax   = one_hot(label) * (1 - g) * sharpness + N(0, (g * logit_noise)^2)
///   decoder_post = softmax(presoftmax)
///   attention    = (1 - g) * diagonal Gaussian peak + g * uniform
///   cer          = max(0, g^2 + N(0, cer_noise_std^2))
struct SynthConfig {
  std::size_t n_utterances = 100;
  std::size_t alphabet_size = 52;
  std::size_t min_length = 8;
  std::size_t max_length = 32;
  std::size_t min_frames = 40;
  std::size_t max_frames = 160;
  double min_corruption = 0.0;
  double max_corruption = 1.0;
  double cer_noise_std = 0.05;
  double sharpness = 10.0;
  double logit_noise = 1.0;
  double attention_width = 1.5;  // Gaussian peak std, in encoder frames
  std::uint64_t seed = 1;
  std::string tag = "synth";
  /// When set, records are tagged <tag>-train / <tag>-dev / <tag>-test in
  /// contiguous blocks; otherwise every record is tagged <tag>.
  bool split = true;
  double train_fraction = 0.6;
  double dev_fraction = 0.2;

  void Check() const;
};

/// Deterministic for a given config. When `corruption` is non-null it
/// receives each record's corruption level, in record order.
Corpus Generate(const SynthConfig &config, std::vector<double> *corruption = nullptr);

/// Records whose dataset tag equals `dataset`, in order.
Corpus FilterDataset(const Corpus &corpus, const std::string &dataset);

}  // namespace pmkit

#endif  // PMKIT_SYNTHCORPUS_H_
