// checkpoint.h

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

#ifndef PMKIT_CHECKPOINT_H_
#define PMKIT_CHECKPOINT_H_

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "pmkit/neural.h"

namespace pmkit {

/// Parameter checkpoint. On disk:
///
///   PMKIT-CHECKPOINT 1\n
///   {"kind":..., "meta":{...}, "tensors":[{"name":..,"shape":[..]}, ...],
///    "num_values": N}\n
///   N x 8 bytes: IEEE-754 doubles, little-endian, tensors concatenated in
///   header order.
///
/// `meta` holds the model config, seed and normalisation statistics.
struct Checkpoint {
  std::string kind;
  nlohmann::ordered_json meta;
  std::vector<std::pair<std::string, nn::Tensor>> tensors;

  const nn::Tensor &Get(const std::string &name) const;
};

std::string SerializeCheckpoint(const Checkpoint &checkpoint);
Checkpoint ParseCheckpoint(std::string_view bytes);

void SaveCheckpoint(const Checkpoint &checkpoint, const std::string &path);
Checkpoint LoadCheckpoint(const std::string &path);

}  // namespace pmkit

#endif  // PMKIT_CHECKPOINT_H_
