// scores.cc

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

#include "pmkit/scores.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>
#include <variant>

#include "pmkit/io.h"

namespace pmkit {

namespace {

constexpr std::string_view kHeader = "utt_id\tdataset\tmeasure\tscore\tcer";

}  // namespace

ScoreResult ScoreEach(const Corpus &corpus, const std::string &measure,
                      const std::function<double(const UtteranceRecord &)> &fn, int jobs) {
  const std::size_t n = corpus.records.size();
  std::vector<std::variant<std::monostate, double, ScoreFailure>> slots(n);
  std::vector<std::exception_ptr> fatal(std::max(jobs, 1));

  auto work = [&](std::size_t worker, std::size_t stride) {
    for (std::size_t i = worker; i < n; i += stride) {
      const UtteranceRecord &rec = corpus.records[i];
      try {
        slots[i] = fn(rec);
      } catch (const Error &e) {
        slots[i] = ScoreFailure{rec.id, e.category(), e.what()};
      } catch (...) {
        fatal[worker] = std::current_exception();
        return;
      }
    }
  };

  const auto workers = static_cast<std::size_t>(std::clamp<int>(jobs, 1, static_cast<int>(std::max<std::size_t>(n, 1))));
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(work, w, workers);
    for (std::thread &t : threads) t.join();
  }
  for (const std::exception_ptr &e : fatal)
    if (e) std::rethrow_exception(e);

  ScoreResult result;
  for (std::size_t i = 0; i < n; ++i) {
    const UtteranceRecord &rec = corpus.records[i];
    if (const double *score = std::get_if<double>(&slots[i])) {
      result.scores.push_back({rec.id, rec.dataset, measure, *score, rec.cer});
    } else if (auto *failure = std::get_if<ScoreFailure>(&slots[i])) {
      result.failures.push_back(std::move(*failure));
    }
  }
  return result;
}

std::string FormatScoreTable(const std::vector<PmScore> &scores) {
  std::string out(kHeader);
  out.push_back('\n');
  for (const PmScore &s : scores) {
    out += s.utterance_id;
    out.push_back('\t');
    out += s.dataset;
    out.push_back('\t');
    out += s.measure;
    out.push_back('\t');
    out += FormatDouble(s.score);
    out.push_back('\t');
    if (s.cer) out += FormatDouble(*s.cer);
    out.push_back('\n');
  }
  return out;
}

std::vector<PmScore> ParseScoreTable(std::string_view text) {
  std::vector<PmScore> scores;
  std::size_t line_number = 0;
  for (std::string_view line : SplitLines(text)) {
    ++line_number;
    if (line.empty()) continue;
    if (line_number == 1 && line.starts_with("utt_id\t")) continue;
    const std::vector<std::string_view> f = SplitTabs(line);
    if (f.size() != 5) {
      throw Error(ErrorCategory::kParse, "line " + std::to_string(line_number) + ": expected 5 fields, got " +
                                             std::to_string(f.size()));
    }
    try {
      PmScore s{std::string(f[0]), std::string(f[1]), std::string(f[2]), ParseDouble(f[3]), std::nullopt};
      if (!f[4].empty()) s.cer = ParseDouble(f[4]);
      if (!std::isfinite(s.score) || (s.cer && !std::isfinite(*s.cer)))
        throw Error(ErrorCategory::kNonFinite, "non-finite value");
      scores.push_back(std::move(s));
    } catch (const Error &e) {
      throw Error(e.category(), "line " + std::to_string(line_number) + ": " + e.what());
    }
  }
  return scores;
}

void WriteScores(const std::vector<PmScore> &scores, const std::string &path) {
  WriteAllText(path, FormatScoreTable(scores));
}

std::vector<PmScore> ReadScores(const std::string &path) { return ParseScoreTable(ReadAllText(path)); }

}  // namespace pmkit
