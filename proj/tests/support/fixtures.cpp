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

#include "fixtures.hpp"

#include <random>
#include <string>

#include "jpsh/types.hpp"

namespace jpsh::testing {

FeatureSet gaussian_mixture(const MixtureSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal;
  const auto d = static_cast<Eigen::Index>(spec.dim);
  Matrix means(static_cast<Eigen::Index>(spec.components), d);
  for (Eigen::Index c = 0; c < means.rows(); ++c) {
    for (Eigen::Index j = 0; j < d; ++j) means(c, j) = normal(rng);
    means.row(c) *= spec.separation / means.row(c).norm();
  }
  const std::size_t n = spec.components * spec.per_component;
  FeatureSet fs;
  fs.features.resize(static_cast<Eigen::Index>(n), d);
  Labels labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t c = i % spec.components;
    for (Eigen::Index j = 0; j < d; ++j)
      fs.features(static_cast<Eigen::Index>(i), j) =
          means(static_cast<Eigen::Index>(c), j) + spec.noise * normal(rng);
    labels[i] = {static_cast<std::uint32_t>(c)};
    fs.ids.push_back(std::to_string(i));
  }
  fs.labels = std::move(labels);
  return fs;
}

std::pair<FeatureSet, FeatureSet> mixture_split(std::uint64_t seed) {
  MixtureSpec spec;
  spec.seed = seed;
  const FeatureSet all = gaussian_mixture(spec);
  SplitSpec split_spec;
  split_spec.test_per_class = 25;
  split_spec.seed = seed;
  return split(all, split_spec);
}

std::filesystem::path data_dir() { return JPSH_TEST_DATA_DIR; }

FeatureSet load_mnist_subset() {
  FeatureSet fs = load_features(data_dir() / "mnist6600" / "images.idx3-ubyte",
                                FeatureFormat::kIdxImage);
  attach_labels(fs, load_labels(data_dir() / "mnist6600" / "labels.txt"));
  return fs;
}

std::pair<FeatureSet, FeatureSet> mnist_split(std::uint64_t seed) {
  SplitSpec spec;
  spec.test_per_class = 60;
  spec.seed = seed;
  return split(load_mnist_subset(), spec);
}

std::filesystem::path temp_dir(const char* tag) {
  std::random_device rd;
  auto dir = std::filesystem::temp_directory_path() /
             ("jpsh-" + std::string(tag) + "-" + std::to_string(rd()));
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace jpsh::testing
