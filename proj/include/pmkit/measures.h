// measures.h

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

#ifndef PMKIT_MEASURES_H_
#define PMKIT_MEASURES_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pmkit/datamodel.h"
#include "pmkit/scores.h"

namespace pmkit {

/// Probabilities at or below this floor contribute 0 to entropy and are
/// clamped to it inside the divergence logarithms.
inline constexpr double kProbabilityFloor = 1e-10;

enum class MeasureId { kEntropyDec, kEntropyAtt, kMcdDec, kMcdAtt };

std::string_view MeasureName(MeasureId id);
std::optional<MeasureId> ParseMeasureId(std::string_view name);

/// How the MCD pair sum is normalised: by the total number of pairs (mean
/// over pairs), or by the product of per-window pair counts.
enum class McdDenominator { kSum, kProduct };

std::optional<McdDenominator> ParseMcdDenominator(std::string_view name);

/// Shannon entropy in nats.
double Entropy(std::span<const double> p);

/// Mean row entropy of an L x K (or L x T) matrix. With normalize set, each
/// row's entropy is divided by log(row length), mapping into [0, 1].
double EScore(const Matrix &rows, bool normalize);

/// Symmetric KL divergence D(p||q) + D(q||p), in nats.
double SymmetricKl(std::span<const double> p, std::span<const double> q);

inline const std::vector<int> &DefaultMcdWindows() {
  static const std::vector<int> kWindows = {1, 2, 3, 4, 5};
  return kWindows;
}

/// Mean symmetric KL between rows l - w and l over every window w and every
/// admissible l. Windows with w >= L contribute no pairs.
double Mcd(const Matrix &rows, std::span<const int> windows = DefaultMcdWindows(),
           McdDenominator denominator = McdDenominator::kSum);

struct MeasureOptions {
  std::vector<int> windows = DefaultMcdWindows();
  McdDenominator denominator = McdDenominator::kSum;
};

/// Single-utterance score; throws missing-feature / too-short errors.
double ScoreRecord(const UtteranceRecord &record, MeasureId measure,
                   const MeasureOptions &options = {});

ScoreResult ScoreCorpus(const Corpus &corpus, MeasureId measure,
                        const MeasureOptions &options = {}, int jobs = 1);

}  // namespace pmkit

#endif  // PMKIT_MEASURES_H_
