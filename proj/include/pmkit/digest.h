// digest.h

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

#ifndef PMKIT_DIGEST_H_
#define PMKIT_DIGEST_H_

#include <string>
#include <string_view>

namespace pmkit {

/// Lowercase hex SHA-256 of a byte string.
std::string Sha256Hex(std::string_view bytes);

/// Lowercase hex SHA-256 of a file's raw (possibly compressed) bytes.
std::string Sha256File(const std::string &path);

}  // namespace pmkit

#endif  // PMKIT_DIGEST_H_
