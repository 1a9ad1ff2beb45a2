/*
 * Copyright 2026 The JPSH Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "jpsh/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "json.hpp"

#include "jpsh/encoder.hpp"
#include "jpsh/error.hpp"

namespace jpsh {
namespace {

using Json = nlohmann::ordered_json;

const Labels& labels_of(const FeatureSet& fs, const char* which) {
  if (!fs.labels) throw LabelError(std::string(which) + " set has no labels");
  return *fs.labels;
}

Json summary_json(const MetricSummary& s) {
  return Json{{"mean", s.mean}, {"stddev", s.stddev}, {"min", s.min}, {"max", s.max}};
}

Json report_json(const EvalReport& report) {
  Json top_n = Json::array();
  for (const auto& [n, p] : report.precision_at)
    top_n.push_back(Json{{"n", n}, {"precision", p}, {"recall", report.recall_at.at(n)}});
  Json pr = Json::array();
  for (const auto& pt : report.pr_curve)
    pr.push_back(Json{{"radius", pt.radius}, {"precision", pt.precision}, {"recall", pt.recall}});
  return Json{{"map", report.map},
              {"ap_at_cutoff", report.ap_at_cutoff},
              {"ap_cutoff", report.ap_cutoff},
              {"top_n", std::move(top_n)},
              {"pr_curve", std::move(pr)},
              {"radius", report.radius},
              {"radius_precision", report.radius_precision},
              {"queries", report.queries},
              {"database", report.database},
              {"queries_without_relevant", report.queries_without_relevant}};
}

}  // namespace

Method parse_method(std::string_view name) {
  if (name == "JPSH" || name == "jpsh") return Method::kJpsh;
  if (name == "JSH_ONLY" || name == "jsh_only") return Method::kJshOnly;
  if (name == "PSH_ONLY" || name == "psh_only") return Method::kPshOnly;
  if (name == "JPSH0" || name == "jpsh0") return Method::kJpshRandomAnchors;
  if (name == "LSH" || name == "lsh") return Method::kLsh;
  throw ParamError("unknown method \"" + std::string(name) +
                   "\" (expected JPSH, JSH_ONLY, PSH_ONLY, JPSH0, LSH)");
}

std::string_view to_string(Method method) {
  switch (method) {
    case Method::kJpsh: return "JPSH";
    case Method::kJshOnly: return "JSH_ONLY";
    case Method::kPshOnly: return "PSH_ONLY";
    case Method::kJpshRandomAnchors: return "JPSH0";
    case Method::kLsh: return "LSH";
  }
  return "?";
}

Hyperparams hyper_for(Method method, Hyperparams base) {
  switch (method) {
    case Method::kJpsh:
      base.mode = Mode::kJpsh;
      base.anchor_init = AnchorInit::kKMeans;
      break;
    case Method::kJshOnly:
      base.mode = Mode::kJshOnly;
      base.anchor_init = AnchorInit::kKMeans;
      break;
    case Method::kPshOnly:
      base.mode = Mode::kPshOnly;
      base.anchor_init = AnchorInit::kKMeans;
      break;
    case Method::kJpshRandomAnchors:
      base.mode = Mode::kJpsh;
      base.anchor_init = AnchorInit::kRandom;
      break;
    case Method::kLsh:
      break;
  }
  return base;
}

ExperimentRunner::ExperimentRunner(FeatureSet train, FeatureSet test, EvalOptions options)
    : train_(std::move(train)), test_(std::move(test)), options_(std::move(options)) {
  train_.validate();
  test_.validate();
  if (test_.size() == 0) throw DataError("test set is empty");
  if (train_.dim() != test_.dim())
    throw ShapeError("train and test sets differ in dimension");
}

const PreparedData& ExperimentRunner::prepared(bool center) {
  auto it = prepared_.find(center);
  if (it == prepared_.end()) it = prepared_.emplace(center, prepare(train_, center)).first;
  return it->second;
}

const AnchorSet& ExperimentRunner::anchors_for(const Hyperparams& hyper) {
  const auto key = std::make_tuple(hyper.center, hyper.anchor_init, hyper.anchors, hyper.seed,
                                   hyper.kmeans_iters);
  auto it = anchors_.find(key);
  if (it == anchors_.end())
    it = anchors_.emplace(key, make_anchors(prepared(hyper.center), hyper)).first;
  return it->second;
}

RunOutcome ExperimentRunner::run(Method method, const Hyperparams& base, bool keep_model) {
  const Hyperparams hyper = hyper_for(method, base);
  hyper.validate();
  const Labels& train_labels = labels_of(train_, "training");
  const Labels& test_labels = labels_of(test_, "test");

  RunOutcome outcome;
  outcome.method = method;
  outcome.bits = hyper.bits;
  outcome.seed = hyper.seed;

  const auto start = std::chrono::steady_clock::now();
  CodeSet db;
  CodeSet queries;
  if (method == Method::kLsh) {
    const LshModel lsh = lsh_fit(train_, hyper.bits, hyper.seed);
    outcome.train_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    db = lsh_encode_batch(lsh, train_);
    queries = lsh_encode_batch(lsh, test_);
  } else {
    if (train_.size() < hyper.anchors)
      throw ParamError("need n >= m, got n=" + std::to_string(train_.size()) + ", m=" +
                       std::to_string(hyper.anchors));
    TrainResult result = train(prepared(hyper.center), anchors_for(hyper), hyper);
    outcome.train_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const Encoder encoder(result.model);
    db = encoder.encode_batch(train_);
    queries = encoder.encode_batch(test_);
    outcome.trace = std::move(result.trace);
    if (keep_model) outcome.model = std::move(result.model);
  }
  outcome.report = evaluate(queries, test_labels, db, train_labels, options_);
  return outcome;
}

MetricSummary summarize(const std::vector<double>& values) {
  MetricSummary s;
  if (values.empty()) return s;
  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  for (const double v : values) sum += v;
  s.mean = sum / n;
  double ss = 0.0;
  for (const double v : values) ss += (v - s.mean) * (v - s.mean);
  s.stddev = values.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  s.min = *std::min_element(values.begin(), values.end());
  s.max = *std::max_element(values.begin(), values.end());
  return s;
}

std::string to_json(const EvalReport& report, int indent) {
  return report_json(report).dump(indent);
}

std::string to_json(const std::vector<CellReport>& cells, int indent) {
  Json out_cells = Json::array();
  for (const auto& cell : cells) {
    Json runs = Json::array();
    std::vector<double> maps, ap_cut, radius;
    std::map<std::size_t, std::vector<double>> prec;
    for (const auto& run : cell.runs) {
      runs.push_back(Json{{"seed", run.seed}, {"report", report_json(run.report)}});
      maps.push_back(run.report.map);
      ap_cut.push_back(run.report.ap_at_cutoff);
      radius.push_back(run.report.radius_precision);
      for (const auto& [n, p] : run.report.precision_at) prec[n].push_back(p);
    }
    Json precision_at = Json::array();
    for (const auto& [n, values] : prec)
      precision_at.push_back(Json{{"n", n}, {"precision", summary_json(summarize(values))}});
    out_cells.push_back(Json{{"method", std::string(to_string(cell.method))},
                             {"bits", cell.bits},
                             {"summary",
                              Json{{"map", summary_json(summarize(maps))},
                                   {"ap_at_cutoff", summary_json(summarize(ap_cut))},
                                   {"radius_precision", summary_json(summarize(radius))},
                                   {"precision_at", std::move(precision_at)}}},
                             {"runs", std::move(runs)}});
  }
  return Json{{"format", "jpsh-eval-report"}, {"version", 1}, {"cells", std::move(out_cells)}}
      .dump(indent);
}

}  // namespace jpsh
