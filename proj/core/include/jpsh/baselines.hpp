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

#include "jpsh/codes.hpp"
#include "jpsh/data_io.hpp"
#include "jpsh/types.hpp"

namespace jpsh {

/// Random-hyperplane LSH.
struct LshModel {
  Matrix projection;   // d x l, standard normal entries
  std::uint64_t seed = 0;
  Vector center_mean;  // empty: inputs are used as given

  std::size_t dim() const { return static_cast<std::size_t>(projection.rows()); }
  std::size_t bits() const { return static_cast<std::size_t>(projection.cols()); }
};

LshModel lsh_train(std::size_t dim, std::size_t bits, std::uint64_t seed);

/// lsh_train plus the training mean, so inputs are centered before projection.
LshModel lsh_fit(const FeatureSet& train, std::size_t bits, std::uint64_t seed);

/// Bit t is 1 iff (projection^T x)_t >= 0.
Code lsh_encode(const LshModel& model, const Eigen::Ref<const Vector>& x);
CodeSet lsh_encode_batch(const LshModel& model, const FeatureSet& fs);

}  // namespace jpsh
