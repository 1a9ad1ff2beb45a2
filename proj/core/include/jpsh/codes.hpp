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
#include <span>
#include <string>
#include <vector>

#include "jpsh/types.hpp"

namespace jpsh {

/// One packed code: bit t lives in bit (t mod 64) of word (t / 64).
using Code = std::vector<std::uint64_t>;

constexpr std::size_t words_for_bits(std::size_t bits) { return (bits + 63) / 64; }

/// +1 (and 0) map to 1, negative values to 0.
Code pack_signs(const Eigen::Ref<const Vector>& values);

/// Inverse of pack_signs on the first `bits` bits: 1 -> +1, 0 -> -1.
Vector unpack_code(std::span<const std::uint64_t> code, std::size_t bits);

/// Packed codes for a corpus, aligned with sample ids. Unused high bits of
/// the last word are zero.
class CodeSet {
 public:
  CodeSet() = default;
  explicit CodeSet(std::size_t bits);

  std::size_t bits() const { return bits_; }
  std::size_t words_per_code() const { return words_; }
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }

  std::span<const std::uint64_t> code(std::size_t i) const {
    return {storage_.data() + i * words_, words_};
  }
  const std::string& id(std::size_t i) const { return ids_[i]; }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::vector<std::uint64_t>& storage() const { return storage_; }

  /// Throws ShapeError on a word-count mismatch or stray high bits.
  void push_back(std::span<const std::uint64_t> code, std::string id);
  void reserve(std::size_t count);

  bool operator==(const CodeSet&) const = default;

 private:
  std::size_t bits_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> storage_;
  std::vector<std::string> ids_;
};

/// "JPSHC1", u64 count, u32 bits, packed little-endian words. Ids go to a
/// sidecar `<path>.ids` text file, one per line.
void save_codes(const CodeSet& codes, const std::filesystem::path& path);
CodeSet load_codes(const std::filesystem::path& path);

}  // namespace jpsh
