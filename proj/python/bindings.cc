// bindings.cc

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

// Python module pmkit._core.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "pmkit/autoencoder.h"
#include "pmkit/calibration.h"
#include "pmkit/datamodel.h"
#include "pmkit/error.h"
#include "pmkit/measures.h"
#include "pmkit/rnn_predictor.h"
#include "pmkit/scores.h"
#include "pmkit/synthcorpus.h"

namespace py = pybind11;
using namespace pmkit;

namespace {

using Rows = std::vector<std::vector<double>>;

Rows ToRows(const Matrix &m) {
  Rows out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) out[r].assign(m.row(r).begin(), m.row(r).end());
  return out;
}

py::object OptionalRows(const std::optional<Matrix> &m) { return m ? py::cast(ToRows(*m)) : py::none(); }

py::dict RecordDict(const UtteranceRecord &r) {
  py::dict d;
  d["id"] = r.id;
  d["dataset"] = r.dataset;
  d["cer"] = r.cer ? py::cast(*r.cer) : py::none();
  d["attention"] = OptionalRows(r.attention);
  d["decoder_post"] = OptionalRows(r.decoder_post);
  d["presoftmax"] = OptionalRows(r.presoftmax);
  return d;
}

Corpus Select(Corpus c, const std::vector<std::string> &datasets) {
  if (datasets.empty()) return c;
  Corpus out;
  for (auto &r : c.records)
    if (std::find(datasets.begin(), datasets.end(), r.dataset) != datasets.end()) out.records.push_back(std::move(r));
  return out;
}

py::list ScoreList(const ScoreResult &res, bool skip_failures) {
  if (!res.failures.empty() && !skip_failures) {
    const ScoreFailure &f = res.failures.front();
    throw Error(f.category, f.utterance_id + ": " + f.message);
  }
  py::list out;
  for (const PmScore &s : res.scores) {
    py::dict d;
    d["id"] = s.utterance_id;
    d["dataset"] = s.dataset;
    d["measure"] = s.measure;
    d["score"] = s.score;
    d["cer"] = s.cer ? py::cast(*s.cer) : py::none();
    out.append(d);
  }
  return out;
}

std::vector<CalibrationPoint> Points(const std::vector<double> &pm, const std::vector<double> &cer) {
  if (pm.size() != cer.size()) throw Error(ErrorCategory::kDimensionMismatch, "pm and cer lengths differ");
  std::vector<CalibrationPoint> p;
  for (std::size_t i = 0; i < pm.size(); ++i) p.push_back({pm[i], cer[i]});
  return p;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "pmkit C++ core";
  m.attr("__version__") = PMKIT_VERSION;

  // Deliberately leaked reference: the translator may run during interpreter
  // shutdown, after module attributes are gone.
  static py::handle py_error = py::exception<Error>(m, "PmkitError").release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error &e) {
      py::object exc = py_error(std::string(CategoryName(e.category())) + ": " + e.what());
      exc.attr("category") = std::string(CategoryName(e.category()));
      PyErr_SetObject(py_error.ptr(), exc.ptr());
    }
  });

  // Measures.
  m.def("entropy", [](const std::vector<double> &p) { return Entropy(p); }, py::arg("p"),
        "Shannon entropy in nats; entries at or below 1e-10 contribute 0.");
  m.def("e_score", [](const Rows &rows, bool normalize) { return EScore(Matrix::FromRows(rows), normalize); },
        py::arg("rows"), py::arg("normalize") = false, "Mean row entropy, optionally divided by log(row length).");
  m.def("symmetric_kl", [](const std::vector<double> &p, const std::vector<double> &q) { return SymmetricKl(p, q); },
        py::arg("p"), py::arg("q"));
  m.def(
      "mcd",
      [](const Rows &rows, const std::vector<int> &windows, const std::string &denominator) {
        const auto d = ParseMcdDenominator(denominator);
        if (!d) throw Error(ErrorCategory::kUsage, "unknown mcd denominator '" + denominator + "'");
        return Mcd(Matrix::FromRows(rows), windows, *d);
      },
      py::arg("rows"), py::arg("windows") = DefaultMcdWindows(), py::arg("denominator") = "sum",
      "Mean symmetric KL between rows a window apart.");

  // Calibration.
  py::class_<CalibrationModel>(m, "CalibrationModel")
      .def_readonly("measure", &CalibrationModel::measure)
      .def_readonly("a", &CalibrationModel::a)
      .def_readonly("b", &CalibrationModel::b)
      .def_readonly("n_dev", &CalibrationModel::n_dev)
      .def_readonly("fit_digest", &CalibrationModel::fit_digest)
      .def("__repr__", [](const CalibrationModel &c) {
        return "CalibrationModel(measure='" + c.measure + "', a=" + std::to_string(c.a) +
               ", b=" + std::to_string(c.b) + ", n_dev=" + std::to_string(c.n_dev) + ")";
      });
  m.def(
      "fit_linear",
      [](const std::vector<double> &pm, const std::vector<double> &cer, const std::string &measure) {
        return FitLinear(Points(pm, cer), measure);
      },
      py::arg("pm"), py::arg("cer"), py::arg("measure") = "", "Least-squares fit of cer = a * pm + b.");
  m.def("predict", &Predict, py::arg("model"), py::arg("pm"), py::arg("clip_nonnegative") = false);
  m.def("spearman", [](const std::vector<double> &x, const std::vector<double> &y) { return Spearman(x, y); },
        py::arg("x"), py::arg("y"));
  m.def(
      "mean_squared_error",
      [](const std::vector<double> &p, const std::vector<double> &t) { return MeanSquaredError(p, t); },
      py::arg("predictions"), py::arg("targets"));

  // Corpora.
  m.def(
      "generate",
      [](const std::string &out, std::size_t n_utterances, std::uint64_t seed, std::size_t alphabet_size,
         double min_corruption, double max_corruption, const std::string &tag, bool split) {
        SynthConfig c;
        c.n_utterances = n_utterances;
        c.seed = seed;
        c.alphabet_size = alphabet_size;
        c.min_corruption = min_corruption;
        c.max_corruption = max_corruption;
        c.tag = tag;
        c.split = split;
        std::vector<double> gamma;
        WriteCorpus(Generate(c, &gamma), out);
        return gamma;
      },
      py::arg("out"), py::arg("n_utterances") = 100, py::arg("seed") = 1, py::arg("alphabet_size") = 52,
      py::arg("min_corruption") = 0.0, py::arg("max_corruption") = 1.0, py::arg("tag") = "synth",
      py::arg("split") = true, "Writes a synthetic corpus and returns each utterance's corruption level.");
  m.def(
      "read_corpus",
      [](const std::string &path) {
        py::list out;
        for (const auto &r : ReadCorpus(path).records) out.append(RecordDict(r));
        return out;
      },
      py::arg("path"), "Records as dicts with id, dataset, cer, attention, decoder_post, presoftmax.");
  m.def(
      "validate_corpus",
      [](const std::string &path, double tolerance, bool check_softmax) {
        ValidateOptions o;
        o.tolerance = tolerance;
        o.check_softmax = check_softmax;
        std::vector<std::pair<std::string, std::string>> out;
        for (const Violation &v : ValidateCorpus(ReadCorpus(path), o)) out.emplace_back(v.kind, v.detail);
        return out;
      },
      py::arg("path"), py::arg("tolerance") = 1e-5, py::arg("check_softmax") = true,
      "List of (kind, detail) violations; empty when the corpus is valid.");
  m.def(
      "score_corpus",
      [](const std::string &path, const std::string &measure, int jobs, const std::string &denominator,
         const std::vector<std::string> &datasets, bool skip_failures) {
        const auto id = ParseMeasureId(measure);
        if (!id) throw Error(ErrorCategory::kUsage, "unknown measure '" + measure + "'");
        const auto d = ParseMcdDenominator(denominator);
        if (!d) throw Error(ErrorCategory::kUsage, "unknown mcd denominator '" + denominator + "'");
        MeasureOptions o;
        o.denominator = *d;
        const Corpus c = Select(ReadCorpus(path), datasets);
        ScoreResult res;
        {
          py::gil_scoped_release release;
          res = ScoreCorpus(c, *id, o, jobs);
        }
        return ScoreList(res, skip_failures);
      },
      py::arg("path"), py::arg("measure"), py::arg("jobs") = 1, py::arg("denominator") = "sum",
      py::arg("datasets") = std::vector<std::string>{}, py::arg("skip_failures") = false);

  // Models.
  m.def(
      "train_ae",
      [](const std::string &corpus, const std::string &out, const std::vector<std::size_t> &hidden,
         std::size_t epochs, std::uint64_t seed, const std::vector<std::string> &datasets) {
        AeConfig c;
        c.hidden = hidden;
        c.epochs = epochs;
        c.seed = seed;
        const Corpus data = Select(ReadCorpus(corpus), datasets);
        TrainHistory h;
        {
          py::gil_scoped_release release;
          SaveAe(TrainAe(data, c, &h), out);
        }
        return h.train_loss;
      },
      py::arg("corpus"), py::arg("out"), py::arg("hidden") = std::vector<std::size_t>{64, 16, 64},
      py::arg("epochs") = 50, py::arg("seed") = 1, py::arg("datasets") = std::vector<std::string>{},
      "Trains an autoencoder checkpoint; returns the training-loss curve.");
  m.def(
      "ae_scores",
      [](const std::string &model, const std::string &corpus, const std::vector<std::string> &datasets, int jobs) {
        const AeModel ae = LoadAe(model);
        const Corpus c = Select(ReadCorpus(corpus), datasets);
        ScoreResult res;
        {
          py::gil_scoped_release release;
          res = ScoreEach(c, "ae", [&](const UtteranceRecord &r) { return AeScore(ae, r); }, jobs);
        }
        return ScoreList(res, false);
      },
      py::arg("model"), py::arg("corpus"), py::arg("datasets") = std::vector<std::string>{}, py::arg("jobs") = 1);
  m.def(
      "train_rnn",
      [](const std::string &corpus, const std::string &out, std::size_t layers, std::size_t hidden_units,
         std::size_t linear_width, std::size_t epochs, std::uint64_t seed, const std::vector<std::string> &datasets) {
        RnnConfig c;
        c.layers = layers;
        c.hidden_units = hidden_units;
        c.linear_width = linear_width;
        c.epochs = epochs;
        c.seed = seed;
        const Corpus data = Select(ReadCorpus(corpus), datasets);
        TrainHistory h;
        {
          py::gil_scoped_release release;
          SaveRnn(TrainRnn(data, c, &h), out);
        }
        return h.train_loss;
      },
      py::arg("corpus"), py::arg("out"), py::arg("layers") = 2, py::arg("hidden_units") = 32,
      py::arg("linear_width") = 32, py::arg("epochs") = 40, py::arg("seed") = 1,
      py::arg("datasets") = std::vector<std::string>{},
      "Trains a recurrent cer predictor checkpoint; returns the training-loss curve.");
  m.def(
      "rnn_scores",
      [](const std::string &model, const std::string &corpus, const std::vector<std::string> &datasets, int jobs) {
        const RnnModel rnn = LoadRnn(model);
        const Corpus c = Select(ReadCorpus(corpus), datasets);
        ScoreResult res;
        {
          py::gil_scoped_release release;
          res = ScoreEach(c, "rnn", [&](const UtteranceRecord &r) { return RnnForward(rnn, r); }, jobs);
        }
        return ScoreList(res, false);
      },
      py::arg("model"), py::arg("corpus"), py::arg("datasets") = std::vector<std::string>{}, py::arg("jobs") = 1);
}
