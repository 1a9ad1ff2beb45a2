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
#include <vector>

#include "jpsh/types.hpp"

namespace jpsh {

/// m anchor points plus the nearest-anchor index (pseudo-label) of every
/// training sample.
struct AnchorSet {
  Matrix centers;                      // m x d
  std::vector<std::uint32_t> assignment;  // one entry per sample, < m
  std::vector<double> wcss_trace;      // within-cluster sum of squares per Lloyd step

  std::size_t count() const { return static_cast<std::size_t>(centers.rows()); }
  std::size_t dim() const { return static_cast<std::size_t>(centers.cols()); }
};

/// Seeded k-means++ followed by Lloyd iterations until the assignment stops
/// changing or max_iters is reached. Empty clusters are re-seeded from the
/// point farthest from its current center.
AnchorSet kmeans(const Matrix& points, std::size_t m, std::uint64_t seed,
                 std::size_t max_iters = 100);

/// m distinct rows sampled uniformly without replacement.
AnchorSet random_anchor_set(const Matrix& points, std::size_t m, std::uint64_t seed);

/// Index of the nearest center by exact squared distance; ties go to the
/// lowest index.
std::size_t nearest_center(const Matrix& centers, const Eigen::Ref<const Vector>& x);

std::vector<std::uint32_t> assign_nearest(const Matrix& points, const Matrix& centers);

double within_cluster_ss(const Matrix& points, const Matrix& centers,
                         const std::vector<std::uint32_t>& assignment);

}  // namespace jpsh
