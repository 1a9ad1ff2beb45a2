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

#include <fstream>
#include <iterator>
#include <string>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "jpsh/error.hpp"
#include "jpsh/model_io.hpp"

namespace jpsh {
namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class ModelIo : public ::testing::Test {
 protected:
  void SetUp() override { dir_ = testing::temp_dir("model"); }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::filesystem::path dir_;
};

JpshModel small_model() {
  auto [train_set, test_set] = testing::mixture_split(6);
  Hyperparams h;
  h.anchors = 8;
  h.k = 3;
  h.psi = 3;
  h.theta = 2.0;
  h.seed = 6;
  return train(train_set, h).model;
}

TEST_F(ModelIo, JpshRoundTripIsExact) {
  const JpshModel model = small_model();
  save_model(model, dir_ / "m.jpshm");
  const JpshModel back = load_jpsh_model(dir_ / "m.jpshm");
  EXPECT_EQ(back.personalized, model.personalized);
  EXPECT_EQ(back.pairwise, model.pairwise);
  EXPECT_EQ(back.rotation_r, model.rotation_r);
  EXPECT_EQ(back.rotation_v, model.rotation_v);
  EXPECT_EQ(back.codes, model.codes);
  EXPECT_EQ(back.anchors.centers, model.anchors.centers);
  EXPECT_EQ(back.center_mean, model.center_mean);
  EXPECT_EQ(back.hyper.theta, model.hyper.theta);
  EXPECT_EQ(back.hyper.mode, model.hyper.mode);
  EXPECT_EQ(peek_model_kind(dir_ / "m.jpshm"), ModelKind::kJpsh);
  save_model(back, dir_ / "again.jpshm");
  EXPECT_EQ(slurp(dir_ / "m.jpshm"), slurp(dir_ / "again.jpshm"));
}

TEST_F(ModelIo, LshRoundTripAndKindCheck) {
  LshModel lsh = lsh_train(7, 9, 2);
  lsh.center_mean = Vector::Ones(7);
  save_model(lsh, dir_ / "l.jpshm");
  const LshModel back = load_lsh_model(dir_ / "l.jpshm");
  EXPECT_EQ(back.projection, lsh.projection);
  EXPECT_EQ(back.center_mean, lsh.center_mean);
  EXPECT_EQ(back.seed, 2u);
  EXPECT_THROW(load_jpsh_model(dir_ / "l.jpshm"), FormatError);
}

TEST_F(ModelIo, CorruptFilesAreFormatErrors) {
  std::ofstream(dir_ / "junk", std::ios::binary) << "hello world, not a model";
  EXPECT_THROW(load_jpsh_model(dir_ / "junk"), FormatError);
  save_model(small_model(), dir_ / "m.jpshm");
  std::filesystem::resize_file(dir_ / "m.jpshm", std::filesystem::file_size(dir_ / "m.jpshm") - 8);
  EXPECT_THROW(load_jpsh_model(dir_ / "m.jpshm"), FormatError);
}

}  // namespace
}  // namespace jpsh
