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
#include <utility>

#include "jpsh/data_io.hpp"

namespace jpsh::testing {

struct MixtureSpec {
  std::size_t components = 4;
  std::size_t per_component = 125;
  std::size_t dim = 10;
  double separation = 3.0;  // norm of each component mean
  double noise = 1.0;       // isotropic standard deviation
  std::uint64_t seed = 0;
};

/// Isotropic Gaussian mixture with one label per component. Rows are
/// interleaved across components so any prefix is roughly balanced.
FeatureSet gaussian_mixture(const MixtureSpec& spec);

/// 400 training rows and 100 queries from one 4-component draw in d=10.
std::pair<FeatureSet, FeatureSet> mixture_split(std::uint64_t seed);

std::filesystem::path data_dir();

/// 6600 MNIST digits with labels, 660 per class.
FeatureSet load_mnist_subset();

/// 6000 / 600 stratified split of load_mnist_subset().
std::pair<FeatureSet, FeatureSet> mnist_split(std::uint64_t seed);

std::filesystem::path temp_dir(const char* tag);

}  // namespace jpsh::testing
