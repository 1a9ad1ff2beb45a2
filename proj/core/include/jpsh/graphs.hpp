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
#include <filesystem>
#include <optional>

#include "jpsh/anchors.hpp"
#include "jpsh/types.hpp"

namespace jpsh {

/// Truncated sample-to-anchor affinity: row i holds a normalized Gaussian
/// kernel over the k nearest anchors of sample i.
struct AnchorAffinity {
  SparseMatrix values;  // n x m, row-stochastic
  std::size_t k = 0;
  double theta = 0.0;   // squared-distance units
};

/// Anchor-to-anchor similarity under the symmetric psi-nearest-neighbour rule.
struct AnchorSimilarity {
  SparseMatrix values;  // m x m, symmetric, zero diagonal
  std::size_t psi = 0;
  double delta = 0.0;   // distance units
};

/// theta defaults to the mean squared distance from each sample to its k-th
/// nearest anchor. Distance ties resolve to the lower anchor index.
AnchorAffinity build_affinity(const Matrix& points, const AnchorSet& anchors, std::size_t k,
                              std::optional<double> theta = std::nullopt);

/// delta defaults to the mean distance from each anchor to its psi nearest
/// neighbours. An anchor is never its own neighbour.
AnchorSimilarity build_anchor_similarity(const AnchorSet& anchors, std::size_t psi,
                                         std::optional<double> delta = std::nullopt);

/// Debug dump as "row,col,value" lines.
void write_coo_csv(const SparseMatrix& matrix, const std::filesystem::path& path);

}  // namespace jpsh
