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

#include "binary_io.hpp"

#include <limits>
#include <vector>

#include "jpsh/error.hpp"

namespace jpsh::detail {

namespace {
// Guards allocation against corrupted size fields.
constexpr std::uint64_t kMaxElements = std::uint64_t{1} << 34;
}  // namespace

BinaryWriter::BinaryWriter(const std::filesystem::path& path)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
  if (!out_) throw Error("cannot open " + path.string() + " for writing");
}

void BinaryWriter::magic(std::string_view tag) { raw(tag.data(), tag.size()); }

void BinaryWriter::string(std::string_view s) {
  u64(s.size());
  raw(s.data(), s.size());
}

void BinaryWriter::matrix(const Matrix& m) {
  u64(static_cast<std::uint64_t>(m.rows()));
  u64(static_cast<std::uint64_t>(m.cols()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) f64(m(r, c));
}

void BinaryWriter::vector(const Vector& v) {
  u64(static_cast<std::uint64_t>(v.size()));
  raw(v.data(), static_cast<std::size_t>(v.size()) * sizeof(double));
}

void BinaryWriter::raw(const void* data, std::size_t bytes) {
  out_.write(static_cast<const char*>(data), static_cast<std::streamsize>(bytes));
  if (!out_) throw Error("write failed: " + path_.string());
}

void BinaryWriter::close() {
  out_.close();
  if (!out_) throw Error("write failed: " + path_.string());
}

BinaryReader::BinaryReader(const std::filesystem::path& path)
    : path_(path), in_(path, std::ios::binary) {
  if (!in_) throw Error("cannot open " + path.string());
}

void BinaryReader::expect_magic(std::string_view tag) {
  std::string got(tag.size(), '\0');
  in_.read(got.data(), static_cast<std::streamsize>(got.size()));
  if (!in_ || got != tag)
    throw FormatError(path_.string() + ": bad magic, expected \"" + std::string(tag) + "\"");
}

std::uint8_t BinaryReader::u8() {
  std::uint8_t v;
  raw(&v, 1);
  return v;
}
std::uint32_t BinaryReader::u32() {
  std::uint32_t v;
  raw(&v, sizeof v);
  return v;
}
std::uint64_t BinaryReader::u64() {
  std::uint64_t v;
  raw(&v, sizeof v);
  return v;
}
float BinaryReader::f32() {
  float v;
  raw(&v, sizeof v);
  return v;
}
double BinaryReader::f64() {
  double v;
  raw(&v, sizeof v);
  return v;
}

std::string BinaryReader::string() {
  const std::uint64_t size = u64();
  if (size > remaining()) throw FormatError(path_.string() + ": truncated string");
  std::string s(size, '\0');
  raw(s.data(), size);
  return s;
}

Matrix BinaryReader::matrix() {
  const std::uint64_t rows = u64();
  const std::uint64_t cols = u64();
  if (rows > kMaxElements || cols > kMaxElements || rows * cols > kMaxElements ||
      rows * cols * sizeof(double) > remaining())
    throw FormatError(path_.string() + ": matrix header exceeds file size");
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = f64();
  return m;
}

Vector BinaryReader::vector() {
  const std::uint64_t size = u64();
  if (size > kMaxElements || size * sizeof(double) > remaining())
    throw FormatError(path_.string() + ": vector header exceeds file size");
  Vector v(static_cast<Eigen::Index>(size));
  raw(v.data(), size * sizeof(double));
  return v;
}

void BinaryReader::raw(void* data, std::size_t bytes) {
  in_.read(static_cast<char*>(data), static_cast<std::streamsize>(bytes));
  if (!in_) throw FormatError(path_.string() + ": unexpected end of file");
}

std::uint64_t BinaryReader::remaining() {
  const auto here = in_.tellg();
  in_.seekg(0, std::ios::end);
  const auto end = in_.tellg();
  in_.seekg(here);
  return static_cast<std::uint64_t>(end - here);
}

void BinaryReader::expect_end() {
  if (remaining() != 0) throw FormatError(path_.string() + ": trailing bytes");
}

}  // namespace jpsh::detail
