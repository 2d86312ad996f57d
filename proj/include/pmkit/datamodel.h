// datamodel.h

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

#ifndef PMKIT_DATAMODEL_H_
#define PMKIT_DATAMODEL_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pmkit {

/// Dense row-major matrix of doubles. One row per character prediction.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  /// Builds from nested rows; throws dimension-mismatch on ragged input.
  static Matrix FromRows(const std::vector<std::vector<double>> &rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0; }

  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  double &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  const std::vector<double> &data() const { return data_; }

  bool operator==(const Matrix &) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// One utterance's recognizer outputs.
///   attention:    L x T, rows are attention weights over encoder frames
///   decoder_post: L x K, rows are posteriors over the output alphabet
///   presoftmax:   L x K, rows are the logits behind decoder_post
/// Any of the three may be absent; cer is a fraction and may exceed 1.
struct UtteranceRecord {
  std::string id;
  std::string dataset;
  std::optional<double> cer;
  std::optional<Matrix> attention;
  std::optional<Matrix> decoder_post;
  std::optional<Matrix> presoftmax;

  /// Number of predictions L, taken from the first present matrix (0 if none).
  std::size_t num_predictions() const;

  bool operator==(const UtteranceRecord &) const = default;
};

struct Corpus {
  std::vector<UtteranceRecord> records;

  bool operator==(const Corpus &) const = default;
};

struct Violation {
  std::string kind;  // row-sum, range, L-mismatch, K-mismatch, ...
  std::string detail;
};

struct ValidateOptions {
  double tolerance = 1e-5;
  bool check_softmax = true;
  double softmax_tolerance = 1e-4;
};

/// Checks every record invariant. Violations are returned, never thrown.
std::vector<Violation> Validate(const UtteranceRecord &record,
                                const ValidateOptions &options = {});

/// Corpus-level checks (duplicate ids) plus per-record violations, each
/// prefixed with the offending record id.
std::vector<Violation> ValidateCorpus(const Corpus &corpus,
                                      const ValidateOptions &options = {});

/// Numerically stable softmax of one logit row.
std::vector<double> Softmax(std::span<const double> logits);

std::string SerializeRecord(const UtteranceRecord &record);
UtteranceRecord ParseRecord(std::string_view line, std::size_t line_number = 0);

/// Newline-delimited JSON container, one utterance per line. Paths ending
/// in .gz are read and written gzip-compressed. Parse errors carry the
/// 1-based line number; duplicate ids are rejected.
Corpus ReadCorpus(const std::string &path);
void WriteCorpus(const Corpus &corpus, const std::string &path);

}  // namespace pmkit

#endif  // PMKIT_DATAMODEL_H_
