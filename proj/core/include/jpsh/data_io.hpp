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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "jpsh/types.hpp"

namespace jpsh {

/// Per-sample label sets. Each row is sorted and duplicate free; an empty row
/// marks an unannotated sample.
using Labels = std::vector<std::vector<std::uint32_t>>;

/// An n x d feature corpus with optional multi-label annotations.
struct FeatureSet {
  Matrix features;  // n x d, one sample per row
  std::vector<std::string> ids;
  std::optional<Labels> labels;

  std::size_t size() const { return static_cast<std::size_t>(features.rows()); }
  std::size_t dim() const { return static_cast<std::size_t>(features.cols()); }

  /// Throws DataError naming the offending row/column when an invariant fails.
  void validate() const;

  /// Rows in the given order; ids and labels follow.
  FeatureSet subset(std::span<const std::size_t> rows) const;
};

enum class FeatureFormat { kFvecBinary, kCsv, kIdxImage };

FeatureFormat parse_feature_format(std::string_view name);
std::string_view to_string(FeatureFormat format);

/// Infers the format from the file extension (.jpshf/.fvec, .csv, idx3).
FeatureFormat guess_feature_format(const std::filesystem::path& path);

/// Loads and validates a feature matrix. Ids are the row numbers "0".."n-1".
/// IDX images are flattened row-major and scaled to [0, 1].
FeatureSet load_features(const std::filesystem::path& path, FeatureFormat format);

/// fvec-binary stores float32, so only float-representable values survive
/// bit-exactly. CSV is written with round-trip precision.
void save_features(const FeatureSet& fs, const std::filesystem::path& path,
                   FeatureFormat format);

/// Text format: one line per sample, comma-separated label indices. An empty
/// line is an unannotated sample. IDX1 label files are also accepted.
Labels load_labels(const std::filesystem::path& path);
void save_labels(const Labels& labels, const std::filesystem::path& path);

/// Attaches labels after checking the row count.
void attach_labels(FeatureSet& fs, Labels labels);

/// Rows whose label set is empty. Such rows are kept, never rejected.
std::vector<std::size_t> unlabeled_rows(const FeatureSet& fs);

enum class SplitStrategy { kPerClassStratified, kUniform };

SplitStrategy parse_split_strategy(std::string_view name);
std::string_view to_string(SplitStrategy strategy);

struct SplitSpec {
  /// For kUniform this is the total number of test rows.
  std::size_t test_per_class = 100;
  std::uint64_t seed = 0;
  SplitStrategy strategy = SplitStrategy::kPerClassStratified;
};

/// Deterministic train/test partition. Both halves keep the input row order.
std::pair<FeatureSet, FeatureSet> split(const FeatureSet& fs, const SplitSpec& spec);

struct CenteredFeatures {
  FeatureSet features;
  Vector mean;
};

CenteredFeatures center(const FeatureSet& fs);

/// Subtracts a stored mean (e.g. the training mean) from every row.
FeatureSet apply_center(const FeatureSet& fs, const Vector& mean);

}  // namespace jpsh
