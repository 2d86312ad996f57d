// checkpoint.cc

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

#include "pmkit/checkpoint.h"

#include <bit>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "pmkit/error.h"
#include "pmkit/io.h"

namespace pmkit {

namespace {

constexpr std::string_view kMagic = "PMKIT-CHECKPOINT 1\n";

[[noreturn]] void Bad(const std::string &msg) { throw Error(ErrorCategory::kCheckpoint, msg); }

}  // namespace

const nn::Tensor &Checkpoint::Get(const std::string &name) const {
  for (const auto &[n, t] : tensors)
    if (n == name) return t;
  Bad("checkpoint has no tensor '" + name + "'");
}

std::string SerializeCheckpoint(const Checkpoint &checkpoint) {
  nlohmann::ordered_json header;
  header["kind"] = checkpoint.kind;
  header["meta"] = checkpoint.meta;
  header["tensors"] = nlohmann::ordered_json::array();
  std::size_t total = 0;
  for (const auto &[name, t] : checkpoint.tensors) {
    header["tensors"].push_back({{"name", name}, {"shape", t.shape}});
    total += t.size();
  }
  header["num_values"] = total;

  std::string out(kMagic);
  out += header.dump();
  out.push_back('\n');
  out.reserve(out.size() + 8 * total);
  for (const auto &[name, t] : checkpoint.tensors) {
    for (double v : t.value) {
      const auto bits = std::bit_cast<std::uint64_t>(v);
      for (int byte = 0; byte < 8; ++byte) out.push_back(static_cast<char>((bits >> (8 * byte)) & 0xff));
    }
  }
  return out;
}

Checkpoint ParseCheckpoint(std::string_view bytes) {
  if (!bytes.starts_with(kMagic)) Bad("not a pmkit checkpoint (bad magic)");
  bytes.remove_prefix(kMagic.size());
  const std::size_t eol = bytes.find('\n');
  if (eol == std::string_view::npos) Bad("truncated checkpoint header");
  nlohmann::ordered_json header;
  try {
    header = nlohmann::ordered_json::parse(bytes.substr(0, eol));
  } catch (const nlohmann::json::exception &e) {
    Bad(std::string("malformed checkpoint header: ") + e.what());
  }
  bytes.remove_prefix(eol + 1);

  Checkpoint ckpt;
  try {
    ckpt.kind = header.at("kind").get<std::string>();
    ckpt.meta = header.at("meta");
    const std::size_t total = header.at("num_values").get<std::size_t>();
    if (bytes.size() != 8 * total)
      Bad("checkpoint payload has " + std::to_string(bytes.size()) + " bytes, expected " +
          std::to_string(8 * total));
    std::size_t pos = 0;
    for (const auto &entry : header.at("tensors")) {
      nn::Tensor t(entry.at("shape").get<std::vector<std::size_t>>());
      if (pos + 8 * t.size() > bytes.size()) Bad("tensor table exceeds payload");
      for (double &v : t.value) {
        std::uint64_t bits = 0;
        for (int byte = 0; byte < 8; ++byte)
          bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[pos + byte])) << (8 * byte);
        v = std::bit_cast<double>(bits);
        pos += 8;
      }
      ckpt.tensors.emplace_back(entry.at("name").get<std::string>(), std::move(t));
    }
    if (pos != bytes.size()) Bad("tensor table does not cover payload");
  } catch (const nlohmann::json::exception &e) {
    Bad(std::string("malformed checkpoint header: ") + e.what());
  }
  return ckpt;
}

void SaveCheckpoint(const Checkpoint &checkpoint, const std::string &path) {
  WriteAllText(path, SerializeCheckpoint(checkpoint));
}

Checkpoint LoadCheckpoint(const std::string &path) { return ParseCheckpoint(ReadAllText(path)); }

}  // namespace pmkit
