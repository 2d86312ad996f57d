// datamodel.cc

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

#include "pmkit/datamodel.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "json.hpp"
#include "pmkit/error.h"
#include "pmkit/io.h"

namespace pmkit {

using nlohmann::json;

Matrix Matrix::FromRows(const std::vector<std::vector<double>> &rows) {
  if (rows.empty()) return Matrix();
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols())
      throw Error(ErrorCategory::kDimensionMismatch,
                  "row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) +
                      " entries, expected " + std::to_string(m.cols()));
    std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
  }
  return m;
}

std::size_t UtteranceRecord::num_predictions() const {
  if (attention) return attention->rows();
  if (decoder_post) return decoder_post->rows();
  if (presoftmax) return presoftmax->rows();
  return 0;
}

std::vector<double> Softmax(std::span<const double> logits) {
  std::vector<double> out(logits.size());
  if (logits.empty()) return out;
  const double peak = *std::max_element(logits.begin(), logits.end());
  double total = 0.0;
  for (std::size_t k = 0; k < logits.size(); ++k) {
    out[k] = std::exp(logits[k] - peak);
    total += out[k];
  }
  for (double &v : out) v /= total;
  return out;
}

namespace {

void CheckStochastic(const Matrix &m, const std::string &name, double tol,
                     std::vector<Violation> *out) {
  if (m.rows() > 0 && m.cols() == 0) {
    out->push_back({"empty", name + " rows have zero length"});
    return;
  }
  for (std::size_t r = 0; r < m.rows(); ++r) {
    double sum = 0.0;
    bool range_ok = true;
    for (double v : m.row(r)) {
      if (!std::isfinite(v)) {
        out->push_back({"non-finite", name + " row " + std::to_string(r)});
        range_ok = false;
        sum = 1.0;
        break;
      }
      if (v < -tol || v > 1.0 + tol) range_ok = false;
      sum += v;
    }
    if (!range_ok)
      out->push_back({"range", name + " row " + std::to_string(r) + " has entries outside [0,1]"});
    if (std::abs(sum - 1.0) > tol)
      out->push_back({"row-sum", name + " row " + std::to_string(r) + " sums to " +
                                     FormatDouble(sum)});
  }
}

}  // namespace

std::vector<Violation> Validate(const UtteranceRecord &record, const ValidateOptions &options) {
  std::vector<Violation> out;
  if (record.cer && (!std::isfinite(*record.cer) || *record.cer < 0.0))
    out.push_back({"cer", "cer must be a finite nonnegative fraction"});

  if (record.attention) CheckStochastic(*record.attention, "attention", options.tolerance, &out);
  if (record.decoder_post)
    CheckStochastic(*record.decoder_post, "decoder_post", options.tolerance, &out);
  if (record.presoftmax) {
    const Matrix &a = *record.presoftmax;
    if (std::any_of(a.data().begin(), a.data().end(), [](double v) { return !std::isfinite(v); }))
      out.push_back({"non-finite", "presoftmax has non-finite entries"});
  }

  std::vector<std::pair<std::string, std::size_t>> lengths;
  if (record.attention) lengths.emplace_back("attention", record.attention->rows());
  if (record.decoder_post) lengths.emplace_back("decoder_post", record.decoder_post->rows());
  if (record.presoftmax) lengths.emplace_back("presoftmax", record.presoftmax->rows());
  for (std::size_t i = 1; i < lengths.size(); ++i) {
    if (lengths[i].second != lengths[0].second) {
      out.push_back({"L-mismatch", lengths[0].first + " L=" + std::to_string(lengths[0].second) +
                                       " vs " + lengths[i].first +
                                       " L=" + std::to_string(lengths[i].second)});
    }
  }

  if (record.decoder_post && record.presoftmax) {
    const Matrix &post = *record.decoder_post;
    const Matrix &logits = *record.presoftmax;
    if (post.cols() != logits.cols()) {
      out.push_back({"K-mismatch", "decoder_post K=" + std::to_string(post.cols()) +
                                       " vs presoftmax K=" + std::to_string(logits.cols())});
    } else if (options.check_softmax && post.rows() == logits.rows()) {
      for (std::size_t r = 0; r < post.rows(); ++r) {
        const std::vector<double> p = Softmax(logits.row(r));
        double worst = 0.0;
        for (std::size_t k = 0; k < p.size(); ++k)
          worst = std::max(worst, std::abs(p[k] - post(r, k)));
        if (!(worst <= options.softmax_tolerance)) {
          out.push_back({"softmax-mismatch", "row " + std::to_string(r) +
                                                 " max deviation " + FormatDouble(worst)});
        }
      }
    }
  }
  return out;
}

std::vector<Violation> ValidateCorpus(const Corpus &corpus, const ValidateOptions &options) {
  std::vector<Violation> out;
  std::set<std::string> seen;
  for (const UtteranceRecord &rec : corpus.records) {
    if (!seen.insert(rec.id).second) out.push_back({"duplicate-id", rec.id});
    for (Violation v : Validate(rec, options)) {
      v.detail = rec.id + ": " + v.detail;
      out.push_back(std::move(v));
    }
  }
  return out;
}

namespace {

void AppendMatrix(const Matrix &m, std::string *out) {
  out->push_back('[');
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r) out->push_back(',');
    out->push_back('[');
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out->push_back(',');
      out->append(FormatDouble(m(r, c)));
    }
    out->push_back(']');
  }
  out->push_back(']');
}

[[noreturn]] void LineError(ErrorCategory cat, std::size_t line, const std::string &msg) {
  throw Error(cat, "line " + std::to_string(line) + ": " + msg);
}

bool LooksNonFinite(std::string_view line) {
  // JSON has no NaN/Infinity literals; writers that emit them produce
  // unparseable lines which should be reported as non-finite, not garbage.
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (in_string) {
      if (ch == '\\') ++i;
      else if (ch == '"') in_string = false;
      continue;
    }
    if (ch == '"') {
      in_string = true;
      continue;
    }
    const std::string_view rest = line.substr(i);
    for (std::string_view token : {"NaN", "nan", "Infinity", "inf", "Inf"})
      if (rest.starts_with(token)) return true;
  }
  return false;
}

std::optional<Matrix> ParseMatrix(const json &doc, const char *key, std::size_t line) {
  auto it = doc.find(key);
  if (it == doc.end() || it->is_null()) return std::nullopt;
  if (!it->is_array()) LineError(ErrorCategory::kParse, line, std::string(key) + " is not an array");
  std::vector<std::vector<double>> rows;
  rows.reserve(it->size());
  for (const json &row : *it) {
    if (!row.is_array())
      LineError(ErrorCategory::kParse, line, std::string(key) + " row is not an array");
    std::vector<double> values;
    values.reserve(row.size());
    for (const json &v : row) {
      if (v.is_string()) {
        LineError(ErrorCategory::kNonFinite, line,
                  std::string(key) + " holds non-numeric entry " + v.dump());
      }
      if (!v.is_number()) LineError(ErrorCategory::kParse, line, std::string(key) + " entry is not a number");
      const double d = v.get<double>();
      if (!std::isfinite(d)) LineError(ErrorCategory::kNonFinite, line, std::string(key) + " entry is not finite");
      values.push_back(d);
    }
    rows.push_back(std::move(values));
  }
  try {
    return Matrix::FromRows(rows);
  } catch (const Error &e) {
    LineError(ErrorCategory::kDimensionMismatch, line, std::string(key) + ": " + e.what());
  }
}

}  // namespace

std::string SerializeRecord(const UtteranceRecord &record) {
  std::string out = "{\"id\":" + json(record.id).dump() + ",\"dataset\":" + json(record.dataset).dump() +
                    ",\"cer\":";
  out += record.cer ? FormatDouble(*record.cer) : "null";
  const std::pair<const char *, const std::optional<Matrix> *> fields[] = {
      {"attention", &record.attention},
      {"decoder_post", &record.decoder_post},
      {"presoftmax", &record.presoftmax}};
  for (const auto &[key, m] : fields) {
    if (!*m) continue;
    out += ",\"";
    out += key;
    out += "\":";
    AppendMatrix(**m, &out);
  }
  out.push_back('}');
  return out;
}

UtteranceRecord ParseRecord(std::string_view line, std::size_t line_number) {
  json doc;
  try {
    doc = json::parse(line);
  } catch (const json::parse_error &e) {
    if (LooksNonFinite(line)) LineError(ErrorCategory::kNonFinite, line_number, "non-finite value");
    LineError(ErrorCategory::kParse, line_number, e.what());
  } catch (const json::out_of_range &) {
    LineError(ErrorCategory::kNonFinite, line_number, "number out of double range");
  }
  if (!doc.is_object()) LineError(ErrorCategory::kParse, line_number, "record is not an object");

  UtteranceRecord rec;
  auto id = doc.find("id");
  if (id == doc.end() || !id->is_string()) LineError(ErrorCategory::kParse, line_number, "missing string id");
  rec.id = id->get<std::string>();
  if (auto ds = doc.find("dataset"); ds != doc.end() && !ds->is_null()) {
    if (!ds->is_string()) LineError(ErrorCategory::kParse, line_number, "dataset is not a string");
    rec.dataset = ds->get<std::string>();
  }
  if (auto cer = doc.find("cer"); cer != doc.end() && !cer->is_null()) {
    if (cer->is_string()) LineError(ErrorCategory::kNonFinite, line_number, "cer is not numeric");
    if (!cer->is_number()) LineError(ErrorCategory::kParse, line_number, "cer is not a number");
    const double v = cer->get<double>();
    if (!std::isfinite(v)) LineError(ErrorCategory::kNonFinite, line_number, "cer is not finite");
    rec.cer = v;
  }
  rec.attention = ParseMatrix(doc, "attention", line_number);
  rec.decoder_post = ParseMatrix(doc, "decoder_post", line_number);
  rec.presoftmax = ParseMatrix(doc, "presoftmax", line_number);
  return rec;
}

Corpus ReadCorpus(const std::string &path) {
  const std::string text = ReadAllText(path);
  Corpus corpus;
  std::set<std::string> seen;
  std::size_t line_number = 0;
  for (std::string_view line : SplitLines(text)) {
    ++line_number;
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    UtteranceRecord rec = ParseRecord(line, line_number);
    if (!seen.insert(rec.id).second)
      LineError(ErrorCategory::kParse, line_number, "duplicate utterance id '" + rec.id + "'");
    corpus.records.push_back(std::move(rec));
  }
  return corpus;
}

void WriteCorpus(const Corpus &corpus, const std::string &path) {
  std::string out;
  for (const UtteranceRecord &rec : corpus.records) {
    out += SerializeRecord(rec);
    out.push_back('\n');
  }
  WriteAllText(path, out);
}

}  // namespace pmkit
