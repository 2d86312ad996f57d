// measures.cc

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

#include "pmkit/measures.h"

#include <algorithm>
#include <cmath>

#include "pmkit/error.h"

namespace pmkit {

std::string_view MeasureName(MeasureId id) {
  switch (id) {
    case MeasureId::kEntropyDec: return "entropy-dec";
    case MeasureId::kEntropyAtt: return "entropy-att";
    case MeasureId::kMcdDec: return "mcd-dec";
    case MeasureId::kMcdAtt: return "mcd-att";
  }
  return "";
}

std::optional<MeasureId> ParseMeasureId(std::string_view name) {
  for (MeasureId id : {MeasureId::kEntropyDec, MeasureId::kEntropyAtt, MeasureId::kMcdDec,
                       MeasureId::kMcdAtt}) {
    if (MeasureName(id) == name) return id;
  }
  return std::nullopt;
}

std::optional<McdDenominator> ParseMcdDenominator(std::string_view name) {
  if (name == "sum") return McdDenominator::kSum;
  if (name == "product") return McdDenominator::kProduct;
  return std::nullopt;
}

double Entropy(std::span<const double> p) {
  double h = 0.0;
  for (double v : p) {
    if (v > kProbabilityFloor) h -= v * std::log(v);
  }
  return h;
}

double EScore(const Matrix &rows, bool normalize) {
  if (rows.rows() == 0) throw Error(ErrorCategory::kTooShort, "e_score needs at least one prediction");
  double scale = 1.0;
  if (normalize) {
    if (rows.cols() < 2)
      throw Error(ErrorCategory::kDegenerate,
                  "degenerate length: normalised entropy needs at least 2 entries per row");
    scale = 1.0 / std::log(static_cast<double>(rows.cols()));
  }
  double total = 0.0;
  for (std::size_t l = 0; l < rows.rows(); ++l) total += Entropy(rows.row(l));
  return total / static_cast<double>(rows.rows()) * scale;
}

double SymmetricKl(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size())
    throw Error(ErrorCategory::kDimensionMismatch,
                "skl length mismatch: " + std::to_string(p.size()) + " vs " + std::to_string(q.size()));
  // Sum of p log(p/q) + q log(q/p) written as (p - q)(log p - log q) so that
  // swapping p and q yields the bit-identical value.
  double d = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double lp = std::log(std::max(p[k], kProbabilityFloor));
    const double lq = std::log(std::max(q[k], kProbabilityFloor));
    d += (p[k] - q[k]) * (lp - lq);
  }
  return d;
}

double Mcd(const Matrix &rows, std::span<const int> windows, McdDenominator denominator) {
  const std::size_t length = rows.rows();
  if (length < 2) throw Error(ErrorCategory::kTooShort, "mcd needs at least 2 predictions");

  std::vector<int> uniq(windows.begin(), windows.end());
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  if (!uniq.empty() && uniq.front() <= 0)
    throw Error(ErrorCategory::kInvalidConfig, "mcd windows must be positive");

  double total = 0.0;
  double pairs = 0.0;
  double product = 1.0;
  bool any = false;
  for (int w : uniq) {
    const auto delta = static_cast<std::size_t>(w);
    if (delta >= length) continue;
    any = true;
    for (std::size_t l = delta; l < length; ++l) total += SymmetricKl(rows.row(l - delta), rows.row(l));
    pairs += static_cast<double>(length - delta);
    product *= static_cast<double>(length - delta);
  }
  if (!any)
    throw Error(ErrorCategory::kTooShort,
                "no mcd window admits a pair at L=" + std::to_string(length));
  return total / (denominator == McdDenominator::kSum ? pairs : product);
}

double ScoreRecord(const UtteranceRecord &record, MeasureId measure, const MeasureOptions &options) {
  const bool attention = measure == MeasureId::kEntropyAtt || measure == MeasureId::kMcdAtt;
  const std::optional<Matrix> &feature = attention ? record.attention : record.decoder_post;
  if (!feature) {
    throw Error(ErrorCategory::kMissingFeature,
                std::string(MeasureName(measure)) + " needs " + (attention ? "attention" : "decoder_post"));
  }
  switch (measure) {
    case MeasureId::kEntropyDec: return EScore(*feature, false);
    case MeasureId::kEntropyAtt: return EScore(*feature, true);
    case MeasureId::kMcdDec:
    case MeasureId::kMcdAtt: return Mcd(*feature, options.windows, options.denominator);
  }
  return 0.0;
}

ScoreResult ScoreCorpus(const Corpus &corpus, MeasureId measure, const MeasureOptions &options,
                        int jobs) {
  return ScoreEach(
      corpus, std::string(MeasureName(measure)),
      [&](const UtteranceRecord &rec) { return ScoreRecord(rec, measure, options); }, jobs);
}

}  // namespace pmkit
