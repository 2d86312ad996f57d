// error.cc

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

#include "pmkit/error.h"

namespace pmkit {

std::string_view CategoryName(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::kUsage: return "usage";
    case ErrorCategory::kMissingInput: return "missing-input";
    case ErrorCategory::kIo: return "io-error";
    case ErrorCategory::kParse: return "parse-error";
    case ErrorCategory::kNonFinite: return "non-finite";
    case ErrorCategory::kDimensionMismatch: return "dimension-mismatch";
    case ErrorCategory::kMissingFeature: return "missing-feature";
    case ErrorCategory::kTooShort: return "too-short";
    case ErrorCategory::kDegenerate: return "degenerate";
    case ErrorCategory::kCerRequired: return "cer-required";
    case ErrorCategory::kEmptyInput: return "empty-input";
    case ErrorCategory::kInvalidConfig: return "invalid-config";
    case ErrorCategory::kInvalidRecords: return "invalid-records";
    case ErrorCategory::kCheckpoint: return "checkpoint-error";
  }
  return "unknown";
}

}  // namespace pmkit
