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

#include "jpsh/model_io.hpp"

#include <string>

#include "binary_io.hpp"
#include "jpsh/error.hpp"

namespace jpsh {
namespace {

constexpr std::string_view kMagic = "JPSHM1";
constexpr std::uint32_t kVersion = 1;

void write_header(detail::BinaryWriter& out, ModelKind kind) {
  out.magic(kMagic);
  out.u32(kVersion);
  out.u32(static_cast<std::uint32_t>(kind));
}

ModelKind read_header(detail::BinaryReader& in, const std::filesystem::path& path) {
  in.expect_magic(kMagic);
  const std::uint32_t version = in.u32();
  if (version != kVersion)
    throw FormatError(path.string() + ": unsupported model version " + std::to_string(version));
  const std::uint32_t kind = in.u32();
  if (kind != static_cast<std::uint32_t>(ModelKind::kJpsh) &&
      kind != static_cast<std::uint32_t>(ModelKind::kLsh))
    throw FormatError(path.string() + ": unknown model kind " + std::to_string(kind));
  return static_cast<ModelKind>(kind);
}

void write_optional(detail::BinaryWriter& out, const std::optional<double>& v) {
  out.u8(v ? 1 : 0);
  out.f64(v.value_or(0.0));
}

std::optional<double> read_optional(detail::BinaryReader& in) {
  const bool present = in.u8() != 0;
  const double v = in.f64();
  return present ? std::optional<double>(v) : std::nullopt;
}

void write_hyper(detail::BinaryWriter& out, const Hyperparams& h) {
  out.f64(h.lambda1);
  out.f64(h.lambda2);
  out.f64(h.lambda3);
  out.u64(h.bits);
  out.u64(h.anchors);
  out.u64(h.k);
  out.u64(h.psi);
  out.u64(h.max_iters);
  out.f64(h.eps);
  out.f64(h.tol);
  out.u8(static_cast<std::uint8_t>(h.mode));
  out.u64(h.seed);
  write_optional(out, h.ridge);
  out.u64(h.kmeans_iters);
  out.u8(static_cast<std::uint8_t>(h.anchor_init));
  out.u8(h.center ? 1 : 0);
  write_optional(out, h.theta);
  write_optional(out, h.delta);
}

Hyperparams read_hyper(detail::BinaryReader& in, const std::filesystem::path& path) {
  Hyperparams h;
  h.lambda1 = in.f64();
  h.lambda2 = in.f64();
  h.lambda3 = in.f64();
  h.bits = in.u64();
  h.anchors = in.u64();
  h.k = in.u64();
  h.psi = in.u64();
  h.max_iters = in.u64();
  h.eps = in.f64();
  h.tol = in.f64();
  const std::uint8_t mode = in.u8();
  if (mode > 2) throw FormatError(path.string() + ": bad mode tag");
  h.mode = static_cast<Mode>(mode);
  h.seed = in.u64();
  h.ridge = read_optional(in);
  h.kmeans_iters = in.u64();
  const std::uint8_t init = in.u8();
  if (init > 1) throw FormatError(path.string() + ": bad anchor-init tag");
  h.anchor_init = static_cast<AnchorInit>(init);
  h.center = in.u8() != 0;
  h.theta = read_optional(in);
  h.delta = read_optional(in);
  return h;
}

}  // namespace

void save_model(const JpshModel& model, const std::filesystem::path& path) {
  model.validate();
  detail::BinaryWriter out(path);
  write_header(out, ModelKind::kJpsh);
  write_hyper(out, model.hyper);
  out.matrix(model.anchors.centers);
  out.vector(model.center_mean);
  out.matrix(model.personalized);
  out.matrix(model.pairwise);
  out.matrix(model.rotation_r);
  out.matrix(model.rotation_v);
  out.matrix(model.codes);
  out.close();
}

JpshModel load_jpsh_model(const std::filesystem::path& path) {
  detail::BinaryReader in(path);
  if (read_header(in, path) != ModelKind::kJpsh)
    throw FormatError(path.string() + ": not a JPSH model");
  JpshModel model;
  model.hyper = read_hyper(in, path);
  model.anchors.centers = in.matrix();
  model.center_mean = in.vector();
  model.personalized = in.matrix();
  model.pairwise = in.matrix();
  model.rotation_r = in.matrix();
  model.rotation_v = in.matrix();
  model.codes = in.matrix();
  in.expect_end();
  try {
    model.validate();
  } catch (const Error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  return model;
}

void save_model(const LshModel& model, const std::filesystem::path& path) {
  detail::BinaryWriter out(path);
  write_header(out, ModelKind::kLsh);
  out.u64(model.seed);
  out.matrix(model.projection);
  out.vector(model.center_mean);
  out.close();
}

LshModel load_lsh_model(const std::filesystem::path& path) {
  detail::BinaryReader in(path);
  if (read_header(in, path) != ModelKind::kLsh)
    throw FormatError(path.string() + ": not an LSH model");
  LshModel model;
  model.seed = in.u64();
  model.projection = in.matrix();
  model.center_mean = in.vector();
  in.expect_end();
  if (model.center_mean.size() != 0 && model.center_mean.size() != model.projection.rows())
    throw FormatError(path.string() + ": mean does not match projection");
  return model;
}

ModelKind peek_model_kind(const std::filesystem::path& path) {
  detail::BinaryReader in(path);
  return read_header(in, path);
}

}  // namespace jpsh
