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

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "jpsh/baselines.hpp"
#include "jpsh/data_io.hpp"
#include "jpsh/metrics.hpp"
#include "jpsh/optimizer.hpp"

namespace jpsh {

/// Everything the evaluation harness can train and score. The two ablation
/// modes and the random-anchor variant reuse the main optimizer.
enum class Method { kJpsh, kJshOnly, kPshOnly, kJpshRandomAnchors, kLsh };

Method parse_method(std::string_view name);
std::string_view to_string(Method method);

/// Hyperparameters with the method's mode and anchor initialization applied.
Hyperparams hyper_for(Method method, Hyperparams base);

struct RunOutcome {
  Method method = Method::kJpsh;
  std::size_t bits = 0;
  std::uint64_t seed = 0;
  EvalReport report;
  std::optional<TrainTrace> trace;
  std::optional<JpshModel> model;
  double train_seconds = 0.0;
};

/// Trains on one corpus, encodes it as the database, and scores the test
/// queries against it. Centered training data and anchor sets are cached,
/// so modes sharing a seed also share their k-means run.
class ExperimentRunner {
 public:
  ExperimentRunner(FeatureSet train, FeatureSet test, EvalOptions options = {});

  RunOutcome run(Method method, const Hyperparams& base, bool keep_model = false);

  const FeatureSet& train_set() const { return train_; }
  const FeatureSet& test_set() const { return test_; }

 private:
  const PreparedData& prepared(bool center);
  const AnchorSet& anchors_for(const Hyperparams& hyper);

  FeatureSet train_;
  FeatureSet test_;
  EvalOptions options_;
  std::map<bool, PreparedData> prepared_;
  std::map<std::tuple<bool, AnchorInit, std::size_t, std::uint64_t, std::size_t>, AnchorSet>
      anchors_;
};

struct MetricSummary {
  double mean = 0.0;
  double stddev = 0.0;
  double min = 0.0;
  double max = 0.0;
};

MetricSummary summarize(const std::vector<double>& values);

/// One (bits, method) cell across seeds.
struct CellReport {
  Method method = Method::kJpsh;
  std::size_t bits = 0;
  std::vector<RunOutcome> runs;
};

/// Deterministic JSON: per-seed reports plus mean/stddev/min/max of each
/// scalar metric. No timings are included.
std::string to_json(const EvalReport& report, int indent = 2);
std::string to_json(const std::vector<CellReport>& cells, int indent = 2);

}  // namespace jpsh
