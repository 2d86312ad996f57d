// error.h

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

#ifndef PMKIT_ERROR_H_
#define PMKIT_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace pmkit {

/// Machine-readable failure categories. The CLI prints the category name as
/// the first token of its one-line error message.
enum class ErrorCategory {
  kUsage,
  kMissingInput,
  kIo,
  kParse,
  kNonFinite,
  kDimensionMismatch,
  kMissingFeature,
  kTooShort,
  kDegenerate,
  kCerRequired,
  kEmptyInput,
  kInvalidConfig,
  kInvalidRecords,
  kCheckpoint,
};

std::string_view CategoryName(ErrorCategory category);

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string &message)
      : std::runtime_error(message), category_(category) {}

  ErrorCategory category() const { return category_; }

 private:
  ErrorCategory category_;
};

}  // namespace pmkit

#endif  // PMKIT_ERROR_H_
