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
#include <span>
#include <string>
#include <vector>

#include "jpsh/codes.hpp"

namespace jpsh {

/// Popcount of XOR. Throws ShapeError if the word counts differ.
std::uint32_t hamming(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);

/// Ranked hits; distances are non-decreasing and ties are ordered by
/// database position.
struct SearchResult {
  std::vector<std::size_t> positions;
  std::vector<std::string> ids;
  std::vector<std::uint32_t> distances;

  std::size_t size() const { return positions.size(); }
};

class HammingIndex {
 public:
  /// With `buckets`, radius queries probe a table keyed by the first
  /// min(bits, 16) bits instead of scanning.
  explicit HammingIndex(CodeSet codes, bool buckets = false);

  const CodeSet& codes() const { return codes_; }
  std::size_t size() const { return codes_.size(); }
  bool has_buckets() const { return !bucket_offsets_.empty(); }

  /// Distance from `query` to every database code, in database order.
  std::vector<std::uint32_t> distances(std::span<const std::uint64_t> query) const;

  SearchResult search_ranked(std::span<const std::uint64_t> query, std::size_t top_n) const;
  SearchResult search_radius(std::span<const std::uint64_t> query, std::uint32_t radius) const;

 private:
  void check_query(std::span<const std::uint64_t> query) const;
  std::uint32_t prefix_of(std::span<const std::uint64_t> code) const;
  SearchResult radius_scan(std::span<const std::uint64_t> query, std::uint32_t radius) const;
  SearchResult radius_buckets(std::span<const std::uint64_t> query, std::uint32_t radius) const;
  SearchResult finish(std::vector<std::size_t> positions,
                      const std::vector<std::uint32_t>& dist) const;

  CodeSet codes_;
  std::size_t prefix_bits_ = 0;
  std::vector<std::uint32_t> bucket_offsets_;  // CSR over 2^prefix_bits buckets
  std::vector<std::uint32_t> bucket_members_;
};

/// Database positions sorted by (distance, position) with a counting sort;
/// `dist` values must not exceed `max_distance`.
std::vector<std::size_t> rank_by_distance(const std::vector<std::uint32_t>& dist,
                                          std::uint32_t max_distance);

}  // namespace jpsh
