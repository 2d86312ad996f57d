// calibration.cc

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

#include "pmkit/calibration.h"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>

#include "json.hpp"
#include "pmkit/digest.h"
#include "pmkit/error.h"
#include "pmkit/io.h"

namespace pmkit {

CalibrationModel FitLinear(std::span<const CalibrationPoint> points, std::string measure) {
  const std::size_t n = points.size();
  if (n < 2) throw Error(ErrorCategory::kTooShort, "linear fit needs at least 2 points");
  double mean_x = 0.0, mean_y = 0.0, max_abs_x = 0.0;
  for (const CalibrationPoint &p : points) {
    if (!std::isfinite(p.pm) || !std::isfinite(p.cer))
      throw Error(ErrorCategory::kNonFinite, "non-finite calibration point");
    mean_x += p.pm;
    mean_y += p.cer;
    max_abs_x = std::max(max_abs_x, std::abs(p.pm));
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (const CalibrationPoint &p : points) {
    const double dx = p.pm - mean_x;
    sxx += dx * dx;
    sxy += dx * (p.cer - mean_y);
  }
  // Centring identical values can leave rounding residue instead of 0.
  const double noise = 4.0 * DBL_EPSILON * max_abs_x;
  if (!(sxx > static_cast<double>(n) * noise * noise))
    throw Error(ErrorCategory::kDegenerate, "pm scores have zero variance; cannot fit a slope");

  CalibrationModel model;
  model.measure = std::move(measure);
  model.a = sxy / sxx;
  model.b = mean_y - model.a * mean_x;
  model.n_dev = n;
  std::string blob;
  for (const CalibrationPoint &p : points) blob += FormatDouble(p.pm) + "\t" + FormatDouble(p.cer) + "\n";
  model.fit_digest = Sha256Hex(blob);
  return model;
}

CalibrationModel FitScores(std::span<const PmScore> scores, const std::string &measure) {
  std::vector<CalibrationPoint> points;
  std::string name = measure;
  for (const PmScore &s : scores) {
    if (!measure.empty() && s.measure != measure) continue;
    if (name.empty()) name = s.measure;
    if (s.measure != name)
      throw Error(ErrorCategory::kUsage, "scores mix measures '" + name + "' and '" + s.measure +
                                             "'; select one with --measure");
    if (!s.cer) throw Error(ErrorCategory::kCerRequired, s.utterance_id + " has no cer");
    points.push_back({s.score, *s.cer});
  }
  if (points.empty()) throw Error(ErrorCategory::kEmptyInput, "no scores for measure '" + measure + "'");
  return FitLinear(points, name);
}

double Predict(const CalibrationModel &model, double pm, bool clip_nonnegative) {
  const double y = model.a * pm + model.b;
  return clip_nonnegative ? std::max(y, 0.0) : y;
}

double DatasetError::rmse() const { return std::sqrt(mse); }

EvalReport Evaluate(const CalibrationModel &model, std::span<const PmScore> scores, bool clip_nonnegative) {
  EvalReport report;
  report.measure = model.measure;
  std::map<std::string, std::size_t> index;
  double pooled_sq = 0.0;
  for (const PmScore &s : scores) {
    if (!model.measure.empty() && s.measure != model.measure) continue;
    if (!s.cer) throw Error(ErrorCategory::kCerRequired, s.utterance_id + " has no cer");
    auto [it, inserted] = index.emplace(s.dataset, report.datasets.size());
    if (inserted) report.datasets.push_back({s.dataset, 0, 0.0});
    const double d = Predict(model, s.score, clip_nonnegative) - *s.cer;
    DatasetError &row = report.datasets[it->second];
    row.count += 1;
    row.mse += d * d;
    pooled_sq += d * d;
  }
  if (report.datasets.empty())
    throw Error(ErrorCategory::kEmptyInput, "no scores to evaluate for measure '" + model.measure + "'");
  std::size_t total = 0;
  for (DatasetError &row : report.datasets) {
    row.mse /= static_cast<double>(row.count);
    total += row.count;
  }
  report.pooled = {kPooledRowName, total, pooled_sq / static_cast<double>(total)};
  return report;
}

std::string FormatReportTsv(std::span<const EvalReport> reports) {
  std::string out = "measure\tdataset\tn\tmse\trmse\n";
  for (const EvalReport &r : reports) {
    auto line = [&](const DatasetError &row) {
      out += r.measure + "\t" + row.dataset + "\t" + std::to_string(row.count) + "\t" + FormatDouble(row.mse) +
             "\t" + FormatDouble(row.rmse()) + "\n";
    };
    for (const DatasetError &row : r.datasets) line(row);
    line(r.pooled);
  }
  return out;
}

std::string FormatReportTable(std::span<const EvalReport> reports) {
  std::vector<std::string> datasets;
  for (const EvalReport &r : reports)
    for (const DatasetError &row : r.datasets)
      if (std::find(datasets.begin(), datasets.end(), row.dataset) == datasets.end())
        datasets.push_back(row.dataset);
  datasets.push_back(kPooledRowName);

  auto lookup = [&](const EvalReport &r, const std::string &name) -> const DatasetError * {
    if (name == kPooledRowName) return &r.pooled;
    for (const DatasetError &row : r.datasets)
      if (row.dataset == name) return &row;
    return nullptr;
  };

  std::size_t name_width = 14;
  for (const std::string &d : datasets) name_width = std::max(name_width, d.size());
  std::size_t col_width = 10;
  for (const EvalReport &r : reports) col_width = std::max(col_width, r.measure.size() + 2);

  auto pad = [](std::string s, std::size_t w, bool right) {
    if (s.size() >= w) return s;
    return right ? std::string(w - s.size(), ' ') + s : s + std::string(w - s.size(), ' ');
  };
  auto fixed2 = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf);
  };

  std::string out;
  auto block = [&](const std::string &title, auto cell) {
    out += title + "\n";
    out += pad("Dataset", name_width, false);
    for (const EvalReport &r : reports) out += pad(r.measure, col_width, true);
    out += "\n";
    for (const std::string &d : datasets) {
      out += pad(d, name_width, false);
      for (const EvalReport &r : reports) {
        const DatasetError *row = lookup(r, d);
        out += pad(row ? cell(*row) : std::string("-"), col_width, true);
      }
      out += "\n";
    }
  };
  block("Mean square error (x10^-2)", [&](const DatasetError &row) { return fixed2(row.mse * 100.0); });
  out += "\n";
  block("Average prediction error sqrt(MSE) (%)", [&](const DatasetError &row) { return fixed2(row.rmse() * 100.0); });
  return out;
}

std::vector<ScatterRow> ExportScatter(std::span<const PmScore> scores, const CalibrationModel &model,
                                      bool clip_nonnegative) {
  std::vector<ScatterRow> rows;
  for (const PmScore &s : scores) {
    if (!model.measure.empty() && s.measure != model.measure) continue;
    if (!s.cer) throw Error(ErrorCategory::kCerRequired, s.utterance_id + " has no cer");
    rows.push_back({s.utterance_id, s.score, *s.cer, Predict(model, s.score, clip_nonnegative)});
  }
  return rows;
}

std::string FormatScatter(std::span<const ScatterRow> rows) {
  std::string out = "utt_id\tpm\tcer\tfitted_cer\n";
  for (const ScatterRow &r : rows)
    out += r.utterance_id + "\t" + FormatDouble(r.pm) + "\t" + FormatDouble(r.cer) + "\t" +
           FormatDouble(r.fitted_cer) + "\n";
  return out;
}

namespace {

std::vector<double> AverageRanks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return v[i] < v[j]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double Spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorCategory::kDimensionMismatch, "spearman: length mismatch");
  if (x.size() < 2) throw Error(ErrorCategory::kTooShort, "spearman needs at least 2 points");
  const std::vector<double> rx = AverageRanks(x), ry = AverageRanks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) throw Error(ErrorCategory::kDegenerate, "spearman of a constant sequence");
  return sxy / std::sqrt(sxx * syy);
}

double MeanSquaredError(std::span<const double> predictions, std::span<const double> targets) {
  if (predictions.size() != targets.size()) throw Error(ErrorCategory::kDimensionMismatch, "mse: length mismatch");
  if (predictions.empty()) throw Error(ErrorCategory::kEmptyInput, "mse of no samples");
  double acc = 0.0;
  for (std::size_t i = 0; i < predictions.size(); ++i)
    acc += (predictions[i] - targets[i]) * (predictions[i] - targets[i]);
  return acc / static_cast<double>(predictions.size());
}

std::string SerializeCalibration(const CalibrationModel &model) {
  // Coefficients are written as shortest round-trip decimals so that a
  // saved model predicts bit-identically after reload.
  std::string out = "{\n";
  out += "  \"measure\": " + nlohmann::json(model.measure).dump() + ",\n";
  out += "  \"a\": " + FormatDouble(model.a) + ",\n";
  out += "  \"b\": " + FormatDouble(model.b) + ",\n";
  out += "  \"n_dev\": " + std::to_string(model.n_dev) + ",\n";
  out += "  \"fit_data_sha256\": " + nlohmann::json(model.fit_digest).dump() + "\n";
  out += "}\n";
  return out;
}

CalibrationModel ParseCalibration(std::string_view text) {
  try {
    const nlohmann::json doc = nlohmann::json::parse(text);
    CalibrationModel m;
    m.measure = doc.at("measure").get<std::string>();
    m.a = doc.at("a").get<double>();
    m.b = doc.at("b").get<double>();
    m.n_dev = doc.at("n_dev").get<std::size_t>();
    m.fit_digest = doc.value("fit_data_sha256", std::string());
    if (!std::isfinite(m.a) || !std::isfinite(m.b)) throw Error(ErrorCategory::kNonFinite, "non-finite coefficients");
    if (m.n_dev < 2) throw Error(ErrorCategory::kParse, "calibration n_dev must be at least 2");
    return m;
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCategory::kParse, std::string("bad calibration file: ") + e.what());
  }
}

void SaveCalibration(const CalibrationModel &model, const std::string &path) {
  WriteAllText(path, SerializeCalibration(model));
}

CalibrationModel LoadCalibration(const std::string &path) { return ParseCalibration(ReadAllText(path)); }

}  // namespace pmkit
