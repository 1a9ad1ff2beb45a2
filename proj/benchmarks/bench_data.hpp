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
#include <random>
#include <string>

#include "jpsh/codes.hpp"
#include "jpsh/data_io.hpp"

namespace jpsh::bench {

inline Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = normal(rng);
  return m;
}

inline FeatureSet random_features(std::size_t n, std::size_t d, std::uint64_t seed) {
  FeatureSet fs;
  fs.features = random_matrix(n, d, seed);
  fs.ids.reserve(n);
  for (std::size_t i = 0; i < n; ++i) fs.ids.push_back(std::to_string(i));
  return fs;
}

inline CodeSet random_codes(std::size_t n, std::size_t bits, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  CodeSet codes(bits);
  codes.reserve(n);
  const std::size_t words = words_for_bits(bits);
  Code code(words);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto& w : code) w = rng();
    if (bits % 64 != 0) code.back() &= (std::uint64_t{1} << (bits % 64)) - 1;
    codes.push_back(code, std::to_string(i));
  }
  return codes;
}

}  // namespace jpsh::bench
