// io.cc

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

#include "pmkit/io.h"

#include <zlib.h>

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include "pmkit/error.h"

namespace pmkit {

bool IsGzipPath(std::string_view path) {
  return path.ends_with(".gz") || path.ends_with(".gzip");
}

std::string ReadAllText(const std::string &path) {
  if (!IsGzipPath(path)) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCategory::kMissingInput, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  gzFile gz = gzopen(path.c_str(), "rb");
  if (gz == nullptr)
    throw Error(ErrorCategory::kMissingInput, "cannot open " + path);
  std::string out;
  std::array<char, 1 << 16> buf{};
  int n = 0;
  while ((n = gzread(gz, buf.data(), static_cast<unsigned>(buf.size()))) > 0)
    out.append(buf.data(), static_cast<std::size_t>(n));
  const bool failed = n < 0;
  gzclose(gz);
  if (failed) throw Error(ErrorCategory::kIo, "corrupt gzip stream in " + path);
  return out;
}

void WriteAllText(const std::string &path, std::string_view content) {
  if (!IsGzipPath(path)) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCategory::kIo, "cannot write " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorCategory::kIo, "short write to " + path);
    return;
  }
  gzFile gz = gzopen(path.c_str(), "wb9");
  if (gz == nullptr) throw Error(ErrorCategory::kIo, "cannot write " + path);
  std::size_t done = 0;
  while (done < content.size()) {
    const auto chunk =
        static_cast<unsigned>(std::min<std::size_t>(content.size() - done, 1u << 20));
    if (gzwrite(gz, content.data() + done, chunk) != static_cast<int>(chunk)) {
      gzclose(gz);
      throw Error(ErrorCategory::kIo, "short write to " + path);
    }
    done += chunk;
  }
  if (gzclose(gz) != Z_OK) throw Error(ErrorCategory::kIo, "cannot close " + path);
}

std::vector<std::string_view> SplitLines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = line.find('\t', start);
    if (end == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, end - start));
    start = end + 1;
  }
}

std::string FormatDouble(double value) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

double ParseDouble(std::string_view text) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw Error(ErrorCategory::kParse, "not a number: '" + std::string(text) + "'");
  return value;
}

}  // namespace pmkit
