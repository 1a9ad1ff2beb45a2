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

#include "jpsh/encoder.hpp"

#include <string>

#include "jpsh/error.hpp"

namespace jpsh {

Encoder::Encoder(const JpshModel& model) {
  model.validate();
  const auto d = static_cast<Eigen::Index>(model.dim());
  const auto m = static_cast<Eigen::Index>(model.anchor_count());
  mean_ = model.center_mean;
  anchor_columns_ = model.anchors.centers.transpose();
  anchor_terms_.resize(static_cast<Eigen::Index>(model.bits()), m);
  for (Eigen::Index j = 0; j < m; ++j)
    anchor_terms_.col(j) = model.rotation_r * (model.personalized.middleRows(j * d, d).transpose() *
                                               anchor_columns_.col(j));
  projection_ = model.rotation_v * model.pairwise.transpose();
}

Vector Encoder::response(const Eigen::Ref<const Vector>& x, std::size_t* anchor) const {
  if (x.size() != mean_.size())
    throw ShapeError("query has dimension " + std::to_string(x.size()) + ", model expects " +
                     std::to_string(mean_.size()));
  const Vector centered = x - mean_;
  std::size_t best = 0;
  double best_dist = (anchor_columns_.col(0) - centered).squaredNorm();
  for (Eigen::Index j = 1; j < anchor_columns_.cols(); ++j) {
    const double dist = (anchor_columns_.col(j) - centered).squaredNorm();
    if (dist < best_dist) {
      best_dist = dist;
      best = static_cast<std::size_t>(j);
    }
  }
  if (anchor) *anchor = best;
  return anchor_terms_.col(static_cast<Eigen::Index>(best)) + projection_ * centered;
}

Code Encoder::encode(const Eigen::Ref<const Vector>& x) const { return pack_signs(response(x)); }

CodeSet Encoder::encode_batch(const FeatureSet& fs) const {
  if (fs.dim() != dim())
    throw ShapeError("feature set has dimension " + std::to_string(fs.dim()) +
                     ", model expects " + std::to_string(dim()));
  CodeSet codes(bits());
  codes.reserve(fs.size());
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const Vector row = fs.features.row(static_cast<Eigen::Index>(i)).transpose();
    codes.push_back(encode(row), i < fs.ids.size() ? fs.ids[i] : std::to_string(i));
  }
  return codes;
}

Code encode(const JpshModel& model, const Eigen::Ref<const Vector>& x) {
  return Encoder(model).encode(x);
}

CodeSet encode_batch(const JpshModel& model, const FeatureSet& fs) {
  return Encoder(model).encode_batch(fs);
}

}  // namespace jpsh
