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

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "jpsh/baselines.hpp"
#include "jpsh/error.hpp"
#include "jpsh/index.hpp"
#include "oracles.hpp"

namespace jpsh {
namespace {

TEST(Lsh, SeededAndFinite) {
  EXPECT_EQ(lsh_train(20, 16, 3).projection, lsh_train(20, 16, 3).projection);
  EXPECT_NE(lsh_train(20, 16, 3).projection, lsh_train(20, 16, 4).projection);
  EXPECT_TRUE(lsh_train(20, 16, 3).projection.allFinite());
  EXPECT_THROW(lsh_train(0, 16, 1), ParamError);
}

TEST(Lsh, ColumnsAreNearlyUncorrelated) {
  const Matrix p = lsh_train(512, 32, 7).projection;
  const Matrix centered = p.rowwise() - p.colwise().mean();
  const Vector norms = centered.colwise().norm();
  double sum = 0.0;
  int count = 0;
  for (Eigen::Index a = 0; a < 32; ++a)
    for (Eigen::Index b = a + 1; b < 32; ++b) {
      sum += std::abs(centered.col(a).dot(centered.col(b)) / (norms(a) * norms(b)));
      ++count;
    }
  EXPECT_LT(sum / count, 0.1);
}

TEST(Lsh, ZeroEncodesToAllOnesAndNegationComplements) {
  const LshModel model = lsh_train(10, 12, 1);
  EXPECT_EQ(lsh_encode(model, Vector::Zero(10))[0], 0xFFFu);
  const Vector x = testing::random_normal(10, 1, 2).col(0);
  EXPECT_EQ(lsh_encode(model, x)[0] ^ lsh_encode(model, -x)[0], 0xFFFu);
  EXPECT_THROW(lsh_encode(model, Vector::Zero(3)), ShapeError);
}

TEST(Lsh, CollisionProbabilityFollowsAngle) {
  // Per bit, P[collision] = 1 - phi / pi for random hyperplanes.
  std::mt19937_64 rng(11);
  std::normal_distribution<double> normal;
  const int d = 8;
  const int samples = 10000;
  for (const double phi : {0.3, 1.0, 2.0}) {
    int collide = 0;
    for (int s = 0; s < samples; ++s) {
      const LshModel model = lsh_train(d, 1, static_cast<std::uint64_t>(s) + 100000);
      Vector u(d), w(d);
      for (int i = 0; i < d; ++i) u(i) = normal(rng), w(i) = normal(rng);
      u.normalize();
      w -= w.dot(u) * u;
      w.normalize();
      const Vector v = std::cos(phi) * u + std::sin(phi) * w;
      collide += lsh_encode(model, u)[0] == lsh_encode(model, v)[0];
    }
    EXPECT_NEAR(static_cast<double>(collide) / samples, 1.0 - phi / std::numbers::pi, 0.05);
  }
}

TEST(Lsh, MeanHammingGrowsWithAngle) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> uni(0.0, std::numbers::pi);
  const LshModel model = lsh_train(16, 64, 5);
  std::vector<double> sum(6, 0.0);
  std::vector<int> count(6, 0);
  for (int s = 0; s < 10000; ++s) {
    const Vector u = testing::random_normal(16, 1, 2 * s + 1).col(0).normalized();
    Vector w = testing::random_normal(16, 1, 2 * s + 2).col(0);
    w = (w - w.dot(u) * u).normalized();
    const double phi = uni(rng);
    const Vector v = std::cos(phi) * u + std::sin(phi) * w;
    const auto bucket = std::min<std::size_t>(5, static_cast<std::size_t>(phi / std::numbers::pi * 6));
    sum[bucket] += hamming(lsh_encode(model, u), lsh_encode(model, v));
    ++count[bucket];
  }
  for (std::size_t b = 1; b < 6; ++b) EXPECT_GT(sum[b] / count[b], sum[b - 1] / count[b - 1]);
}

TEST(Lsh, FitCentersInputs) {
  FeatureSet fs;
  fs.features = testing::random_normal(50, 6, 3).array() + 100.0;
  for (int i = 0; i < 50; ++i) fs.ids.push_back(std::to_string(i));
  const LshModel model = lsh_fit(fs, 8, 1);
  EXPECT_LT((model.center_mean - fs.features.colwise().mean().transpose()).norm(), 1e-12);
  const CodeSet codes = lsh_encode_batch(model, fs);
  EXPECT_EQ(codes.size(), 50u);
  // Uncentered, every row would map to nearly the same code.
  std::size_t distinct = 0;
  for (std::size_t i = 1; i < 50; ++i) distinct += codes.code(i)[0] != codes.code(0)[0];
  EXPECT_GT(distinct, 40u);
}

}  // namespace
}  // namespace jpsh
