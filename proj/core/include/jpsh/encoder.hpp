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

#include "jpsh/codes.hpp"
#include "jpsh/data_io.hpp"
#include "jpsh/optimizer.hpp"

namespace jpsh {

/// Out-of-sample encoder. A query is centered with the stored training mean,
/// matched to its nearest anchor c_j, and coded as
/// sgn(R P_j^T c_j + V W^T x).
class Encoder {
 public:
  explicit Encoder(const JpshModel& model);

  Code encode(const Eigen::Ref<const Vector>& x) const;

  /// Raw pre-sign responses for an uncentered input, plus the anchor used.
  Vector response(const Eigen::Ref<const Vector>& x, std::size_t* anchor = nullptr) const;

  /// Row-wise encode; order preserving, ids copied from `fs`.
  CodeSet encode_batch(const FeatureSet& fs) const;

  std::size_t dim() const { return static_cast<std::size_t>(mean_.size()); }
  std::size_t bits() const { return static_cast<std::size_t>(projection_.rows()); }

 private:
  Vector mean_;
  Matrix anchor_columns_;  // d x m
  Matrix anchor_terms_;    // l x m, column j is R P_j^T c_j
  Matrix projection_;      // l x d, V W^T
};

Code encode(const JpshModel& model, const Eigen::Ref<const Vector>& x);
CodeSet encode_batch(const JpshModel& model, const FeatureSet& fs);

}  // namespace jpsh
