// io.h

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

#ifndef PMKIT_IO_H_
#define PMKIT_IO_H_

#include <string>
#include <string_view>
#include <vector>

namespace pmkit {

/// True when the path carries a gzip suffix (".gz" or ".gzip").
bool IsGzipPath(std::string_view path);

/// Reads a whole file, transparently decompressing gzip paths.
std::string ReadAllText(const std::string &path);

/// Writes a whole file, gzip-compressing when the path has a gzip suffix.
/// The gzip header carries no timestamp, so output is byte-reproducible.
void WriteAllText(const std::string &path, std::string_view content);

/// Splits on '\n'; a trailing newline does not produce an empty last line.
std::vector<std::string_view> SplitLines(std::string_view text);

std::vector<std::string_view> SplitTabs(std::string_view line);

/// Shortest decimal representation that parses back to the same double.
std::string FormatDouble(double value);

/// Strict full-string parse; throws a parse-error Error otherwise.
double ParseDouble(std::string_view text);

}  // namespace pmkit

#endif  // PMKIT_IO_H_
