// calibration.h

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

#ifndef PMKIT_CALIBRATION_H_
#define PMKIT_CALIBRATION_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "pmkit/scores.h"

namespace pmkit {

struct CalibrationPoint {
  double pm = 0.0;
  double cer = 0.0;
};

/// Linear map cer ~= a * pm + b for one measure.
struct CalibrationModel {
  std::string measure;
  double a = 0.0;
  double b = 0.0;
  std::size_t n_dev = 0;
  std::string fit_digest;  // SHA-256 of the fitted (pm, cer) pairs

  bool operator==(const CalibrationModel &) const = default;
};

/// Ordinary least squares on centred sums. Throws too-short for n < 2 and
/// degenerate when the pm values have no spread.
CalibrationModel FitLinear(std::span<const CalibrationPoint> points, std::string measure = "");

/// Fits on every score of `measure` (all rows when empty); each row must
/// carry a cer (cer-required otherwise).
CalibrationModel FitScores(std::span<const PmScore> scores, const std::string &measure);

/// a * pm + b, optionally clipped at zero for display.
double Predict(const CalibrationModel &model, double pm, bool clip_nonnegative = false);

struct DatasetError {
  std::string dataset;
  std::size_t count = 0;
  double mse = 0.0;

  double rmse() const;
};

inline constexpr const char *kPooledRowName = "All Together";

/// Per-dataset test MSE for one measure plus the pooled row over every
/// evaluated utterance (not an average of dataset averages).
struct EvalReport {
  std::string measure;
  std::vector<DatasetError> datasets;  // first-appearance order
  DatasetError pooled;
};

EvalReport Evaluate(const CalibrationModel &model, std::span<const PmScore> scores,
                    bool clip_nonnegative = false);

/// Long format: measure, dataset, n, mse, rmse.
std::string FormatReportTsv(std::span<const EvalReport> reports);

/// Aligned table, datasets as rows and measures as columns, MSE x 1e-2,
/// followed by the average prediction error sqrt(MSE) in percent.
std::string FormatReportTable(std::span<const EvalReport> reports);

struct ScatterRow {
  std::string utterance_id;
  double pm = 0.0;
  double cer = 0.0;
  double fitted_cer = 0.0;
};

std::vector<ScatterRow> ExportScatter(std::span<const PmScore> scores, const CalibrationModel &model,
                                      bool clip_nonnegative = false);
std::string FormatScatter(std::span<const ScatterRow> rows);

/// Spearman rank correlation with average ranks for ties.
double Spearman(std::span<const double> x, std::span<const double> y);

double MeanSquaredError(std::span<const double> predictions, std::span<const double> targets);

std::string SerializeCalibration(const CalibrationModel &model);
CalibrationModel ParseCalibration(std::string_view text);
void SaveCalibration(const CalibrationModel &model, const std::string &path);
CalibrationModel LoadCalibration(const std::string &path);

}  // namespace pmkit

#endif  // PMKIT_CALIBRATION_H_
