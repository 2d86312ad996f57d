// pmkit.cc

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

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pmkit/autoencoder.h"
#include "pmkit/calibration.h"
#include "pmkit/datamodel.h"
#include "pmkit/digest.h"
#include "pmkit/error.h"
#include "pmkit/io.h"
#include "pmkit/measures.h"
#include "pmkit/rnn_predictor.h"
#include "pmkit/scores.h"
#include "pmkit/synthcorpus.h"

namespace {

using namespace pmkit;
using ojson = nlohmann::ordered_json;

const char *kUsage =
    "Predicts the character error rate of an end-to-end recognizer from its\n"
    "attention weights, decoder posteriors and pre-softmax activations.\n"
    "Typical flow: gen -> score -> [train-ae | train-rnn] -> fit -> eval -> scatter\n";

std::string UtcNow() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Every option of the subcommand with its resolved value, defaults included.
ojson ResolvedFlags(const CLI::App &sub) {
  ojson flags = ojson::object();
  for (const CLI::Option *opt : sub.get_options()) {
    if (opt->get_lnames().empty() || opt->get_lnames()[0] == "help") continue;
    const std::string name = opt->get_lnames()[0];
    if (opt->count() > 0) {
      const auto &res = opt->results();
      if (opt->get_expected_max() == 0) {
        flags[name] = true;
      } else if (res.size() == 1 && opt->get_items_expected_max() <= 1) {
        flags[name] = res[0];
      } else {
        flags[name] = res;
      }
    } else if (opt->get_expected_max() == 0) {
      flags[name] = false;
    } else if (opt->get_default_str() == "{}") {
      flags[name] = ojson::array();
    } else if (!opt->get_default_str().empty()) {
      flags[name] = opt->get_default_str();
    } else {
      flags[name] = nullptr;
    }
  }
  return flags;
}

/// Provenance record written to <output>.manifest.json.
class RunManifest {
 public:
  RunManifest(const CLI::App &sub) : sub_(sub), started_(UtcNow()) {}

  void AddInput(const std::string &path) { inputs_.push_back(path); }
  void SetSeed(std::uint64_t seed) { seed_ = seed; }

  void Write(const std::string &output) const {
    ojson m;
    m["subcommand"] = sub_.get_name();
    m["flags"] = ResolvedFlags(sub_);
    m["inputs"] = ojson::array();
    for (const std::string &p : inputs_) m["inputs"].push_back({{"path", p}, {"sha256", Sha256File(p)}});
    m["output"] = output;
    m["seed"] = seed_ ? ojson(*seed_) : ojson(nullptr);
    m["version"] = PMKIT_VERSION;
    m["started_at"] = started_;
    m["finished_at"] = UtcNow();
    WriteAllText(output + ".manifest.json", m.dump(2) + "\n");
  }

 private:
  const CLI::App &sub_;
  std::string started_;
  std::vector<std::string> inputs_;
  std::optional<std::uint64_t> seed_;
};

/// --seed wins, then PMKIT_SEED, then 1.
std::uint64_t ResolveSeed(const CLI::Option *opt, std::uint64_t flag_value) {
  if (opt->count() > 0) return flag_value;
  if (const char *env = std::getenv("PMKIT_SEED"); env && *env) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
      return v;
    } catch (const std::exception &) {
      throw Error(ErrorCategory::kUsage, std::string("PMKIT_SEED is not an unsigned integer: ") + env);
    }
  }
  return 1;
}

Corpus ReadFiltered(const std::string &path, const std::vector<std::string> &datasets) {
  Corpus c = ReadCorpus(path);
  if (datasets.empty()) return c;
  Corpus out;
  for (auto &r : c.records)
    if (std::find(datasets.begin(), datasets.end(), r.dataset) != datasets.end()) out.records.push_back(std::move(r));
  if (out.records.empty()) throw Error(ErrorCategory::kEmptyInput, "no records in the selected datasets");
  return out;
}

std::vector<PmScore> FilterScores(std::vector<PmScore> scores, const std::vector<std::string> &datasets) {
  if (datasets.empty()) return scores;
  std::vector<PmScore> out;
  for (auto &s : scores)
    if (std::find(datasets.begin(), datasets.end(), s.dataset) != datasets.end()) out.push_back(std::move(s));
  return out;
}

std::vector<std::size_t> ParseWidths(const std::string &text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size() || v <= 0) throw std::invalid_argument(item);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception &) {
      throw Error(ErrorCategory::kUsage, "bad layer width list '" + text + "'");
    }
  }
  if (out.empty()) throw Error(ErrorCategory::kUsage, "empty layer width list");
  return out;
}

// ----------------------------------------------------------------------------

struct GenArgs {
  SynthConfig cfg;
  std::string out, corruption_out;
  bool no_split = false;
};

void RunGen(const CLI::App &sub, const CLI::Option *seed_opt, GenArgs &a) {
  RunManifest manifest(sub);
  a.cfg.seed = ResolveSeed(seed_opt, a.cfg.seed);
  a.cfg.split = !a.no_split;
  manifest.SetSeed(a.cfg.seed);
  std::vector<double> gamma;
  const Corpus corpus = Generate(a.cfg, &gamma);
  WriteCorpus(corpus, a.out);
  if (!a.corruption_out.empty()) {
    std::string tsv = "utt_id\tcorruption\n";
    for (std::size_t i = 0; i < gamma.size(); ++i)
      tsv += corpus.records[i].id + "\t" + FormatDouble(gamma[i]) + "\n";
    WriteAllText(a.corruption_out, tsv);
  }
  manifest.Write(a.out);
  std::map<std::string, std::size_t> counts;
  for (const auto &r : corpus.records) ++counts[r.dataset];
  std::cout << "wrote " << corpus.records.size() << " utterances to " << a.out;
  for (const auto &[ds, n] : counts) std::cout << "  " << ds << "=" << n;
  std::cout << "\n";
}

struct ValidateArgs {
  std::string in, out;
  ValidateOptions opts;
  bool no_softmax = false;
};

void RunValidate(const CLI::App &sub, ValidateArgs &a) {
  RunManifest manifest(sub);
  manifest.AddInput(a.in);
  a.opts.check_softmax = !a.no_softmax;
  const Corpus corpus = ReadCorpus(a.in);
  const std::vector<Violation> violations = ValidateCorpus(corpus, a.opts);
  if (!a.out.empty()) {
    std::string tsv = "kind\tdetail\n";
    for (const Violation &v : violations) tsv += v.kind + "\t" + v.detail + "\n";
    WriteAllText(a.out, tsv);
    manifest.Write(a.out);
  }
  for (const Violation &v : violations) std::cerr << "pmkit: violation: " << v.kind << ": " << v.detail << "\n";
  std::cout << corpus.records.size() << " records, " << violations.size() << " violations\n";
  if (!violations.empty())
    throw Error(ErrorCategory::kInvalidRecords,
                std::to_string(violations.size()) + " violations in " + a.in);
}

struct ScoreArgs {
  std::string in, out, measure, model, denominator = "sum";
  std::vector<int> windows = DefaultMcdWindows();
  std::vector<std::string> datasets;
  int jobs = 1;
  bool skip_failures = false;
};

void RunScore(const CLI::App &sub, ScoreArgs &a) {
  RunManifest manifest(sub);
  manifest.AddInput(a.in);
  const Corpus corpus = ReadFiltered(a.in, a.datasets);
  ScoreResult result;
  if (a.measure == "ae" || a.measure == "rnn") {
    if (a.model.empty()) throw Error(ErrorCategory::kUsage, "--measure " + a.measure + " needs --model");
    manifest.AddInput(a.model);
    if (a.measure == "ae") {
      const AeModel model = LoadAe(a.model);
      result = ScoreEach(corpus, "ae", [&](const UtteranceRecord &r) { return AeScore(model, r); }, a.jobs);
    } else {
      const RnnModel model = LoadRnn(a.model);
      result = ScoreEach(corpus, "rnn", [&](const UtteranceRecord &r) { return RnnForward(model, r); }, a.jobs);
    }
  } else {
    const auto id = ParseMeasureId(a.measure);
    if (!id) throw Error(ErrorCategory::kUsage, "unknown measure '" + a.measure + "'");
    const auto denom = ParseMcdDenominator(a.denominator);
    if (!denom) throw Error(ErrorCategory::kUsage, "unknown mcd denominator '" + a.denominator + "'");
    MeasureOptions opts;
    opts.windows = a.windows;
    opts.denominator = *denom;
    result = ScoreCorpus(corpus, *id, opts, a.jobs);
  }
  for (const ScoreFailure &f : result.failures)
    std::cerr << "pmkit: " << (a.skip_failures ? "warning" : "error") << ": " << CategoryName(f.category) << ": "
              << f.utterance_id << ": " << f.message << "\n";
  if (!result.failures.empty() && !a.skip_failures)
    throw Error(result.failures.front().category,
                std::to_string(result.failures.size()) + " utterances could not be scored (first: " +
                    result.failures.front().utterance_id + "); rerun with --skip-failures to drop them");
  WriteScores(result.scores, a.out);
  manifest.Write(a.out);
  std::cout << "scored " << result.scores.size() << " utterances with " << a.measure;
  if (!result.failures.empty()) std::cout << " (" << result.failures.size() << " skipped)";
  std::cout << "\n";
}

struct TrainAeArgs {
  AeConfig cfg;
  std::string in, out, hidden = "64,16,64";
  std::vector<std::string> datasets;
  bool full_scale = false;
};

void RunTrainAe(const CLI::App &sub, const CLI::Option *seed_opt, TrainAeArgs &a) {
  RunManifest manifest(sub);
  manifest.AddInput(a.in);
  a.cfg.seed = ResolveSeed(seed_opt, a.cfg.seed);
  manifest.SetSeed(a.cfg.seed);
  a.cfg.hidden = a.full_scale ? AeConfig::FullScale().hidden : ParseWidths(a.hidden);
  const Corpus corpus = ReadFiltered(a.in, a.datasets);
  TrainHistory hist;
  const AeModel model = TrainAe(corpus, a.cfg, &hist);
  SaveAe(model, a.out);
  manifest.Write(a.out);
  std::cout << "autoencoder: " << hist.train_loss.size() - 1 << " epochs, best epoch " << hist.best_epoch
            << ", train loss " << FormatDouble(hist.train_loss.back());
  if (!hist.validation_loss.empty())
    std::cout << ", best validation loss " << FormatDouble(hist.validation_loss[hist.best_epoch]);
  std::cout << "\n";
}

struct TrainRnnArgs {
  RnnConfig cfg;
  std::string in, out;
  std::vector<std::string> datasets;
  bool full_scale = false;
};

void RunTrainRnn(const CLI::App &sub, const CLI::Option *seed_opt, TrainRnnArgs &a) {
  RunManifest manifest(sub);
  manifest.AddInput(a.in);
  a.cfg.seed = ResolveSeed(seed_opt, a.cfg.seed);
  manifest.SetSeed(a.cfg.seed);
  if (a.full_scale) {
    const RnnConfig p = RnnConfig::FullScale();
    a.cfg.layers = p.layers;
    a.cfg.hidden_units = p.hidden_units;
    a.cfg.linear_width = p.linear_width;
  }
  const Corpus corpus = ReadFiltered(a.in, a.datasets);
  TrainHistory hist;
  const RnnModel model = TrainRnn(corpus, a.cfg, &hist);
  SaveRnn(model, a.out);
  manifest.Write(a.out);
  std::cout << "rnn predictor: " << hist.train_loss.size() - 1 << " epochs, best epoch " << hist.best_epoch
            << ", train mse " << FormatDouble(hist.train_loss.back());
  if (!hist.validation_loss.empty())
    std::cout << ", best validation mse " << FormatDouble(hist.validation_loss[hist.best_epoch]);
  std::cout << "\n";
}

struct FitArgs {
  std::string in, out, measure;
  std::vector<std::string> datasets;
};

void RunFit(const CLI::App &sub, FitArgs &a) {
  RunManifest manifest(sub);
  manifest.AddInput(a.in);
  const std::vector<PmScore> scores = FilterScores(ReadScores(a.in), a.datasets);
  const CalibrationModel model = FitScores(scores, a.measure);
  SaveCalibration(model, a.out);
  manifest.Write(a.out);
  std::cout << model.measure << ": cer = " << FormatDouble(model.a) << " * pm + " << FormatDouble(model.b)
            << "  (n=" << model.n_dev << ")\n";
}

struct EvalArgs {
  std::vector<std::string> in, calib, datasets;
  std::string out;
  bool clip = false;
};

void RunEval(const CLI::App &sub, EvalArgs &a) {
  RunManifest manifest(sub);
  std::vector<PmScore> scores;
  for (const std::string &p : a.in) {
    manifest.AddInput(p);
    auto part = ReadScores(p);
    scores.insert(scores.end(), part.begin(), part.end());
  }
  scores = FilterScores(std::move(scores), a.datasets);
  std::vector<EvalReport> reports;
  for (const std::string &p : a.calib) {
    manifest.AddInput(p);
    reports.push_back(Evaluate(LoadCalibration(p), scores, a.clip));
  }
  WriteAllText(a.out, FormatReportTsv(reports));
  manifest.Write(a.out);
  std::cout << FormatReportTable(reports);
}

struct ScatterArgs {
  std::string in, calib, out;
  std::vector<std::string> datasets;
  bool clip = false;
};

void RunScatter(const CLI::App &sub, ScatterArgs &a) {
  RunManifest manifest(sub);
  manifest.AddInput(a.in);
  manifest.AddInput(a.calib);
  const std::vector<PmScore> scores = FilterScores(ReadScores(a.in), a.datasets);
  const auto rows = ExportScatter(scores, LoadCalibration(a.calib), a.clip);
  WriteAllText(a.out, FormatScatter(rows));
  manifest.Write(a.out);
  std::cout << "wrote " << rows.size() << " scatter rows to " << a.out << "\n";
}

}  // namespace

int main(int argc, char *argv[]) {
  CLI::App app(kUsage, "pmkit");
  app.set_version_flag("--version", PMKIT_VERSION);
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  // gen
  GenArgs gen;
  CLI::App *gen_cmd = app.add_subcommand("gen", "Generate a synthetic corpus with known corruption and cer");
  gen_cmd->add_option("--out", gen.out, "Output corpus (.jsonl or .jsonl.gz)")->required();
  gen_cmd->add_option("--utts", gen.cfg.n_utterances, "Number of utterances");
  CLI::Option *gen_seed = gen_cmd->add_option("--seed", gen.cfg.seed, "Random seed (else $PMKIT_SEED, else 1)");
  gen_cmd->add_option("--alphabet", gen.cfg.alphabet_size, "Output alphabet size K");
  gen_cmd->add_option("--min-length", gen.cfg.min_length, "Minimum hypothesis length L");
  gen_cmd->add_option("--max-length", gen.cfg.max_length, "Maximum hypothesis length L");
  gen_cmd->add_option("--min-frames", gen.cfg.min_frames, "Minimum encoder length T");
  gen_cmd->add_option("--max-frames", gen.cfg.max_frames, "Maximum encoder length T");
  gen_cmd->add_option("--min-corruption", gen.cfg.min_corruption, "Lower end of the corruption range");
  gen_cmd->add_option("--max-corruption", gen.cfg.max_corruption, "Upper end of the corruption range");
  gen_cmd->add_option("--cer-noise", gen.cfg.cer_noise_std, "Std of the noise added to cer");
  gen_cmd->add_option("--sharpness", gen.cfg.sharpness, "Logit scale of the correct label when clean");
  gen_cmd->add_option("--logit-noise", gen.cfg.logit_noise, "Logit noise std at full corruption");
  gen_cmd->add_option("--attention-width", gen.cfg.attention_width, "Std of the attention peak, in frames");
  gen_cmd->add_option("--tag", gen.cfg.tag, "Dataset tag prefix");
  gen_cmd->add_flag("--no-split", gen.no_split, "Tag every record <tag> instead of <tag>-train/dev/test");
  gen_cmd->add_option("--train-fraction", gen.cfg.train_fraction, "Fraction tagged <tag>-train");
  gen_cmd->add_option("--dev-fraction", gen.cfg.dev_fraction, "Fraction tagged <tag>-dev");
  gen_cmd->add_option("--corruption-out", gen.corruption_out, "Also write per-utterance corruption levels (TSV)");

  // validate
  ValidateArgs val;
  CLI::App *val_cmd = app.add_subcommand("validate", "Check a corpus against the container invariants");
  val_cmd->add_option("--in", val.in, "Input corpus")->required();
  val_cmd->add_option("--out", val.out, "Write the violation list (TSV) here");
  val_cmd->add_option("--tolerance", val.opts.tolerance, "Row-sum tolerance");
  val_cmd->add_option("--softmax-tolerance", val.opts.softmax_tolerance, "softmax(presoftmax) vs decoder_post tolerance");
  val_cmd->add_flag("--no-softmax-check", val.no_softmax, "Skip the softmax consistency check");

  // score
  ScoreArgs score;
  CLI::App *score_cmd = app.add_subcommand("score", "Compute one performance-monitoring score per utterance");
  score_cmd->add_option("--in", score.in, "Input corpus")->required();
  score_cmd->add_option("--out", score.out, "Output score table (TSV)")->required();
  score_cmd->add_option("--measure", score.measure, "entropy-dec | entropy-att | mcd-dec | mcd-att | ae | rnn")
      ->required();
  score_cmd->add_option("--model", score.model, "Checkpoint for --measure ae or rnn");
  score_cmd->add_option("--jobs", score.jobs, "Worker threads")->check(CLI::PositiveNumber);
  score_cmd->add_option("--mcd-denominator", score.denominator, "sum | product");
  score_cmd->add_option("--mcd-windows", score.windows, "MCD window offsets")->delimiter(',');
  score_cmd->add_option("--dataset", score.datasets, "Only score records with these dataset tags");
  score_cmd->add_flag("--skip-failures", score.skip_failures, "Drop unscorable utterances instead of failing");

  // train-ae
  TrainAeArgs ae;
  CLI::App *ae_cmd = app.add_subcommand("train-ae", "Train the pre-softmax autoencoder");
  ae_cmd->add_option("--in", ae.in, "Training corpus")->required();
  ae_cmd->add_option("--out", ae.out, "Output checkpoint")->required();
  ae_cmd->add_option("--dataset", ae.datasets, "Only train on these dataset tags");
  CLI::Option *ae_seed = ae_cmd->add_option("--seed", ae.cfg.seed, "Random seed (else $PMKIT_SEED, else 1)");
  ae_cmd->add_option("--hidden", ae.hidden, "Comma-separated hidden widths");
  ae_cmd->add_flag("--full-scale", ae.full_scale, "Use hidden widths 512,512,24,512");
  ae_cmd->add_option("--epochs", ae.cfg.epochs, "Maximum epochs");
  ae_cmd->add_option("--batch-size", ae.cfg.batch_size, "Frames per update");
  ae_cmd->add_option("--lr", ae.cfg.learning_rate, "Adam learning rate");
  ae_cmd->add_option("--validation-fraction", ae.cfg.validation_fraction, "Held-out utterance fraction");
  ae_cmd->add_option("--patience", ae.cfg.patience, "Early-stopping patience in epochs");

  // train-rnn
  TrainRnnArgs rnn;
  CLI::App *rnn_cmd = app.add_subcommand("train-rnn", "Train the BLSTM cer regressor");
  rnn_cmd->add_option("--in", rnn.in, "Training corpus (records need cer)")->required();
  rnn_cmd->add_option("--out", rnn.out, "Output checkpoint")->required();
  rnn_cmd->add_option("--dataset", rnn.datasets, "Only train on these dataset tags");
  CLI::Option *rnn_seed = rnn_cmd->add_option("--seed", rnn.cfg.seed, "Random seed (else $PMKIT_SEED, else 1)");
  rnn_cmd->add_option("--layers", rnn.cfg.layers, "BLSTM layers");
  rnn_cmd->add_option("--hidden-units", rnn.cfg.hidden_units, "LSTM units per direction");
  rnn_cmd->add_option("--linear-width", rnn.cfg.linear_width, "Width of the linear layer");
  rnn_cmd->add_flag("--full-scale", rnn.full_scale, "Use 320 units and a 300-wide linear layer");
  rnn_cmd->add_option("--epochs", rnn.cfg.epochs, "Maximum epochs");
  rnn_cmd->add_option("--batch-size", rnn.cfg.batch_size, "Utterances per update");
  rnn_cmd->add_option("--lr", rnn.cfg.learning_rate, "Adam learning rate");
  rnn_cmd->add_option("--clip-norm", rnn.cfg.clip_norm, "Global gradient-norm clip");
  rnn_cmd->add_option("--validation-fraction", rnn.cfg.validation_fraction, "Held-out utterance fraction");
  rnn_cmd->add_option("--patience", rnn.cfg.patience, "Early-stopping patience in epochs");

  // fit
  FitArgs fit;
  CLI::App *fit_cmd = app.add_subcommand("fit", "Fit cer = a * pm + b on scores with known cer");
  fit_cmd->add_option("--in", fit.in, "Score table")->required();
  fit_cmd->add_option("--out", fit.out, "Output calibration (JSON)")->required();
  fit_cmd->add_option("--measure", fit.measure, "Measure to fit (default: the table's only measure)");
  fit_cmd->add_option("--dataset", fit.datasets, "Only fit on these dataset tags");

  // eval
  EvalArgs ev;
  CLI::App *eval_cmd = app.add_subcommand("eval", "Per-dataset MSE of calibrated predictions");
  eval_cmd->add_option("--in", ev.in, "Score tables")->required();
  eval_cmd->add_option("--calib", ev.calib, "Calibration files, one per measure")->required();
  eval_cmd->add_option("--out", ev.out, "Output report (TSV)")->required();
  eval_cmd->add_option("--dataset", ev.datasets, "Only evaluate these dataset tags");
  eval_cmd->add_flag("--clip-nonnegative", ev.clip, "Clip predictions at zero");

  // scatter
  ScatterArgs sc;
  CLI::App *sc_cmd = app.add_subcommand("scatter", "Export (pm, cer, fitted cer) rows for plotting");
  sc_cmd->add_option("--in", sc.in, "Score table")->required();
  sc_cmd->add_option("--calib", sc.calib, "Calibration file")->required();
  sc_cmd->add_option("--out", sc.out, "Output table (TSV)")->required();
  sc_cmd->add_option("--dataset", sc.datasets, "Only export these dataset tags");
  sc_cmd->add_flag("--clip-nonnegative", sc.clip, "Clip fitted values at zero");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    std::cerr << "pmkit: error: usage: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*gen_cmd) RunGen(*gen_cmd, gen_seed, gen);
    else if (*val_cmd) RunValidate(*val_cmd, val);
    else if (*score_cmd) RunScore(*score_cmd, score);
    else if (*ae_cmd) RunTrainAe(*ae_cmd, ae_seed, ae);
    else if (*rnn_cmd) RunTrainRnn(*rnn_cmd, rnn_seed, rnn);
    else if (*fit_cmd) RunFit(*fit_cmd, fit);
    else if (*eval_cmd) RunEval(*eval_cmd, ev);
    else if (*sc_cmd) RunScatter(*sc_cmd, sc);
  } catch (const Error &e) {
    std::cerr << "pmkit: error: " << CategoryName(e.category()) << ": " << e.what() << "\n";
    return e.category() == ErrorCategory::kUsage ? 2 : 1;
  } catch (const std::exception &e) {
    std::cerr << "pmkit: error: internal: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
