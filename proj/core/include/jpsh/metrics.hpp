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
#include <filesystem>
#include <map>
#include <span>
#include <vector>

#include "jpsh/codes.hpp"
#include "jpsh/data_io.hpp"

namespace jpsh {

/// True iff the sorted label sets intersect. Throws LabelError if either is
/// empty (no annotation).
bool relevant(std::span<const std::uint32_t> query_labels,
              std::span<const std::uint32_t> db_labels);

/// Average precision over a full ranking, normalized by the number of
/// relevant items in `flags`. Returns 0 when nothing is relevant.
double average_precision(std::span<const std::uint8_t> flags);

/// Average precision of the first `cutoff` ranks, normalized by the hits
/// inside the cutoff.
double truncated_average_precision(std::span<const std::uint8_t> flags, std::size_t cutoff);

struct EvalOptions {
  std::vector<std::size_t> top_ns = {1, 5, 10, 20, 50, 100, 200, 500, 1000};
  std::size_t ap_cutoff = 100;
  std::uint32_t radius = 2;
};

struct PrPoint {
  std::uint32_t radius = 0;
  double precision = 0.0;
  double recall = 0.0;
};

struct EvalReport {
  double map = 0.0;
  /// Mean AP truncated at options.ap_cutoff ranks.
  double ap_at_cutoff = 0.0;
  std::size_t ap_cutoff = 100;
  std::map<std::size_t, double> precision_at;
  std::map<std::size_t, double> recall_at;
  /// Hamming-radius sweep, pooled over queries; recall is non-decreasing.
  std::vector<PrPoint> pr_curve;
  std::uint32_t radius = 2;
  /// Mean precision of radius lookups; an empty lookup counts as 0.
  double radius_precision = 0.0;
  std::size_t queries = 0;
  std::size_t database = 0;
  std::size_t queries_without_relevant = 0;
};

/// Full Hamming-ranking evaluation. Throws ShapeError on a bit-length
/// mismatch, LabelError on missing labels, DataError on an empty query set.
EvalReport evaluate(const CodeSet& queries, const Labels& query_labels, const CodeSet& db,
                    const Labels& db_labels, const EvalOptions& options = {});

/// "N,precision,recall"
void write_topn_csv(const EvalReport& report, const std::filesystem::path& path);
/// "radius,precision,recall"
void write_pr_csv(const EvalReport& report, const std::filesystem::path& path);

}  // namespace jpsh
