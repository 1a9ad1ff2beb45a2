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

#include "jpsh/codes.hpp"

#include <fstream>
#include <string>

#include "binary_io.hpp"
#include "jpsh/error.hpp"

namespace jpsh {
namespace {

std::filesystem::path ids_path(const std::filesystem::path& path) {
  return std::filesystem::path(path.string() + ".ids");
}

}  // namespace

Code pack_signs(const Eigen::Ref<const Vector>& values) {
  const auto bits = static_cast<std::size_t>(values.size());
  Code code(words_for_bits(bits), 0);
  for (std::size_t t = 0; t < bits; ++t)
    if (values(static_cast<Eigen::Index>(t)) >= 0.0) code[t / 64] |= std::uint64_t{1} << (t % 64);
  return code;
}

Vector unpack_code(std::span<const std::uint64_t> code, std::size_t bits) {
  if (code.size() != words_for_bits(bits)) throw ShapeError("code word count does not match bits");
  Vector out(static_cast<Eigen::Index>(bits));
  for (std::size_t t = 0; t < bits; ++t)
    out(static_cast<Eigen::Index>(t)) = (code[t / 64] >> (t % 64)) & 1U ? 1.0 : -1.0;
  return out;
}

CodeSet::CodeSet(std::size_t bits) : bits_(bits), words_(words_for_bits(bits)) {
  if (bits == 0) throw ShapeError("codes need at least one bit");
}

void CodeSet::push_back(std::span<const std::uint64_t> code, std::string id) {
  if (code.size() != words_)
    throw ShapeError("code has " + std::to_string(code.size()) + " words, expected " +
                     std::to_string(words_));
  if (bits_ % 64 != 0 && (code.back() >> (bits_ % 64)) != 0)
    throw ShapeError("code has bits set beyond l=" + std::to_string(bits_));
  storage_.insert(storage_.end(), code.begin(), code.end());
  ids_.push_back(std::move(id));
}

void CodeSet::reserve(std::size_t count) {
  storage_.reserve(count * words_);
  ids_.reserve(count);
}

void save_codes(const CodeSet& codes, const std::filesystem::path& path) {
  detail::BinaryWriter out(path);
  out.magic("JPSHC1");
  out.u64(codes.size());
  out.u32(static_cast<std::uint32_t>(codes.bits()));
  out.raw(codes.storage().data(), codes.storage().size() * sizeof(std::uint64_t));
  out.close();

  std::ofstream ids(ids_path(path), std::ios::binary);
  if (!ids) throw Error("cannot open " + ids_path(path).string() + " for writing");
  for (const auto& id : codes.ids()) {
    if (id.find('\n') != std::string::npos) throw DataError("id contains a newline: " + id);
    ids << id << '\n';
  }
  if (!ids) throw Error("write failed: " + ids_path(path).string());
}

CodeSet load_codes(const std::filesystem::path& path) {
  detail::BinaryReader in(path);
  in.expect_magic("JPSHC1");
  const std::uint64_t count = in.u64();
  const std::uint32_t bits = in.u32();
  if (bits == 0) throw FormatError(path.string() + ": zero-bit codes");
  const std::size_t words = words_for_bits(bits);
  if (in.remaining() != count * words * sizeof(std::uint64_t))
    throw FormatError(path.string() + ": payload size does not match header");

  std::vector<std::string> ids;
  const auto sidecar = ids_path(path);
  if (std::filesystem::exists(sidecar)) {
    std::ifstream f(sidecar, std::ios::binary);
    std::string line;
    while (std::getline(f, line)) ids.push_back(line);
    if (ids.size() != count)
      throw FormatError(sidecar.string() + ": " + std::to_string(ids.size()) + " ids for " +
                        std::to_string(count) + " codes");
  } else {
    ids.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) ids.push_back(std::to_string(i));
  }

  CodeSet codes(bits);
  codes.reserve(count);
  Code code(words);
  for (std::uint64_t i = 0; i < count; ++i) {
    in.raw(code.data(), words * sizeof(std::uint64_t));
    try {
      codes.push_back(code, std::move(ids[i]));
    } catch (const ShapeError& e) {
      throw FormatError(path.string() + ": code " + std::to_string(i) + ": " + e.what());
    }
  }
  in.expect_end();
  return codes;
}

}  // namespace jpsh
