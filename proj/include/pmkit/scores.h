// scores.h

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

#ifndef PMKIT_SCORES_H_
#define PMKIT_SCORES_H_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pmkit/datamodel.h"
#include "pmkit/error.h"

namespace pmkit {

/// One utterance-level performance-monitoring score. The measure is a string
/// so closed-form measures (entropy-dec, ...) and model measures (ae, rnn)
/// share one table format.
struct PmScore {
  std::string utterance_id;
  std::string dataset;
  std::string measure;
  double score = 0.0;
  std::optional<double> cer;

  bool operator==(const PmScore &) const = default;
};

/// A record that could not be scored, with the reason.
struct ScoreFailure {
  std::string utterance_id;
  ErrorCategory category;
  std::string message;
};

struct ScoreResult {
  std::vector<PmScore> scores;
  std::vector<ScoreFailure> failures;
};

/// Applies `fn` to every record, in parallel over `jobs` threads. Output
/// order always equals input order. pmkit::Error from `fn` becomes a
/// ScoreFailure; any other exception propagates.
ScoreResult ScoreEach(const Corpus &corpus, const std::string &measure,
                      const std::function<double(const UtteranceRecord &)> &fn, int jobs = 1);

/// Tab-separated: utt_id, dataset, measure, score, cer (empty when unknown),
/// preceded by a header line.
std::string FormatScoreTable(const std::vector<PmScore> &scores);
std::vector<PmScore> ParseScoreTable(std::string_view text);

void WriteScores(const std::vector<PmScore> &scores, const std::string &path);
std::vector<PmScore> ReadScores(const std::string &path);

}  // namespace pmkit

#endif  // PMKIT_SCORES_H_
