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

#include "jpsh/baselines.hpp"

#include <random>
#include <string>

#include "jpsh/error.hpp"

namespace jpsh {

LshModel lsh_train(std::size_t dim, std::size_t bits, std::uint64_t seed) {
  if (dim == 0 || bits == 0) throw ParamError("LSH needs d >= 1 and l >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  LshModel model;
  model.seed = seed;
  model.projection.resize(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(bits));
  for (Eigen::Index c = 0; c < model.projection.cols(); ++c)
    for (Eigen::Index r = 0; r < model.projection.rows(); ++r) model.projection(r, c) = normal(rng);
  return model;
}

LshModel lsh_fit(const FeatureSet& train, std::size_t bits, std::uint64_t seed) {
  train.validate();
  if (train.size() == 0) throw DataError("LSH fit needs at least one training row");
  LshModel model = lsh_train(train.dim(), bits, seed);
  model.center_mean = train.features.colwise().mean().transpose();
  return model;
}

Code lsh_encode(const LshModel& model, const Eigen::Ref<const Vector>& x) {
  if (static_cast<std::size_t>(x.size()) != model.dim())
    throw ShapeError("query has dimension " + std::to_string(x.size()) + ", LSH model expects " +
                     std::to_string(model.dim()));
  if (model.center_mean.size() == 0) return pack_signs(model.projection.transpose() * x);
  return pack_signs(model.projection.transpose() * (x - model.center_mean));
}

CodeSet lsh_encode_batch(const LshModel& model, const FeatureSet& fs) {
  if (fs.dim() != model.dim())
    throw ShapeError("feature set has dimension " + std::to_string(fs.dim()) +
                     ", LSH model expects " + std::to_string(model.dim()));
  CodeSet codes(model.bits());
  codes.reserve(fs.size());
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const Vector row = fs.features.row(static_cast<Eigen::Index>(i)).transpose();
    codes.push_back(lsh_encode(model, row), i < fs.ids.size() ? fs.ids[i] : std::to_string(i));
  }
  return codes;
}

}  // namespace jpsh
