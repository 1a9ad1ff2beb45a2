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

#include <algorithm>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "jpsh/codes.hpp"
#include "jpsh/encoder.hpp"
#include "jpsh/error.hpp"
#include "oracles.hpp"

namespace jpsh {
namespace {

JpshModel zero_model(Eigen::Index d, Eigen::Index m, Eigen::Index l) {
  JpshModel model;
  model.anchors.centers = testing::random_normal(m, d, 1);
  model.personalized = Matrix::Zero(m * d, l);
  model.pairwise = Matrix::Zero(d, l);
  model.rotation_r = Matrix::Identity(l, l);
  model.rotation_v = Matrix::Identity(l, l);
  model.codes = Matrix::Ones(l, m);
  model.center_mean = Vector::Zero(d);
  return model;
}

JpshModel tiny_trained_model() {
  FeatureSet fs;
  fs.features = testing::random_normal(40, 2, 17);
  for (int i = 0; i < 40; ++i) fs.ids.push_back(std::to_string(i));
  Hyperparams h;
  h.bits = 4;
  h.anchors = 2;
  h.k = 2;
  h.psi = 1;
  h.seed = 17;
  return train(fs, h).model;
}

TEST(Packing, BitOrderIsLittleEndian) {
  Vector v(66);
  v.setConstant(-1.0);
  v(0) = 1.0;
  v(63) = 0.0;  // sgn(0) = +1
  v(65) = 2.0;
  const Code c = pack_signs(v);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0], (std::uint64_t{1} << 63) | 1U);
  EXPECT_EQ(c[1], std::uint64_t{1} << 1);
  EXPECT_EQ(unpack_code(c, 66), sign_of(v));
}

TEST(CodeSetTest, RejectsStrayHighBits) {
  CodeSet set(5);
  EXPECT_THROW(set.push_back(Code{1U << 5}, "x"), ShapeError);
  EXPECT_THROW(set.push_back(Code{1, 0}, "x"), ShapeError);
  set.push_back(Code{0b10101}, "ok");
  EXPECT_EQ(set.size(), 1u);
}

TEST(CodeSetTest, FileRoundTrip) {
  const auto dir = testing::temp_dir("codes");
  CodeSet set(70);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 25; ++i) set.push_back(Code{rng(), rng() & 0x3F}, "id-" + std::to_string(i));
  save_codes(set, dir / "c.jpshc");
  EXPECT_EQ(load_codes(dir / "c.jpshc"), set);
  std::filesystem::remove(dir / "c.jpshc.ids");
  EXPECT_EQ(load_codes(dir / "c.jpshc").id(3), "3");
  std::filesystem::remove_all(dir);
}

TEST(Encode, ZeroWeightsGiveAllOnes) {
  const JpshModel model = zero_model(3, 4, 10);
  const Code c = encode(model, testing::random_normal(3, 1, 5).col(0));
  EXPECT_EQ(c[0], (std::uint64_t{1} << 10) - 1);
}

TEST(Encode, WithoutPairwiseTermCodeDependsOnlyOnAnchor) {
  JpshModel model = zero_model(2, 2, 6);
  model.anchors.centers << -5, 0, 5, 0;
  model.personalized = testing::random_normal(4, 6, 7);
  Vector a(2), b(2);
  a << -4, 1;
  b << -6, -2;
  EXPECT_EQ(encode(model, a), encode(model, b));
}

TEST(Encode, MatchesUnpackedRecomputation) {
  const JpshModel model = tiny_trained_model();
  const Matrix queries = testing::random_normal(100, 2, 99);
  for (Eigen::Index q = 0; q < 100; ++q) {
    const Vector x = queries.row(q).transpose() - model.center_mean;
    double best = 1e300;
    Eigen::Index j = 0;
    for (Eigen::Index a = 0; a < 2; ++a) {
      const double dist = (x - model.anchors.centers.row(a).transpose()).squaredNorm();
      if (dist < best) {
        best = dist;
        j = a;
      }
    }
    const Vector resp = model.rotation_r * model.personalized.middleRows(j * 2, 2).transpose() *
                            model.anchors.centers.row(j).transpose() +
                        model.rotation_v * model.pairwise.transpose() * x;
    const Vector got = unpack_code(encode(model, queries.row(q).transpose()), 4);
    for (Eigen::Index t = 0; t < 4; ++t) EXPECT_EQ(got(t), resp(t) >= 0.0 ? 1.0 : -1.0);
  }
}

TEST(Encode, DimensionMismatchIsShapeError) {
  const JpshModel model = zero_model(3, 2, 4);
  EXPECT_THROW(encode(model, Vector::Zero(4)), ShapeError);
}

TEST(EncodeBatch, MatchesSingleAndIsPermutationEquivariant) {
  const JpshModel model = tiny_trained_model();
  FeatureSet fs;
  fs.features = testing::random_normal(30, 2, 4);
  for (int i = 0; i < 30; ++i) fs.ids.push_back("r" + std::to_string(i));
  const CodeSet batch = encode_batch(model, fs);
  for (std::size_t i = 0; i < 30; ++i) {
    const Code single = encode(model, fs.features.row(static_cast<Eigen::Index>(i)).transpose());
    EXPECT_TRUE(std::equal(single.begin(), single.end(), batch.code(i).begin()));
    EXPECT_EQ(batch.id(i), fs.ids[i]);
  }
  std::vector<std::size_t> perm(30);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), std::mt19937_64(1));
  const CodeSet shuffled = encode_batch(model, fs.subset(perm));
  for (std::size_t i = 0; i < 30; ++i)
    EXPECT_TRUE(std::equal(shuffled.code(i).begin(), shuffled.code(i).end(),
                           batch.code(perm[i]).begin()));
}

TEST(EncodeBatch, TrainingRowsUseStoredMean) {
  auto [train_set, test_set] = testing::mixture_split(0);
  Hyperparams h;
  h.anchors = 8;
  h.k = 3;
  h.psi = 3;
  const TrainResult r = train(train_set, h);
  // Raw training rows go through the stored mean, so each lands on the
  // anchor k-means assigned it in centered coordinates.
  const Encoder enc(r.model);
  for (std::size_t i = 0; i < train_set.size(); ++i) {
    std::size_t anchor = 0;
    enc.response(train_set.features.row(static_cast<Eigen::Index>(i)).transpose(), &anchor);
    EXPECT_EQ(anchor, r.model.anchors.assignment[i]);
  }
}

}  // namespace
}  // namespace jpsh
