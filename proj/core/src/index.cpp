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

#include "jpsh/index.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "jpsh/error.hpp"

namespace jpsh {

std::uint32_t hamming(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  if (a.size() != b.size())
    throw ShapeError("codes differ in length: " + std::to_string(a.size()) + " vs " +
                     std::to_string(b.size()) + " words");
  std::uint32_t dist = 0;
  for (std::size_t w = 0; w < a.size(); ++w)
    dist += static_cast<std::uint32_t>(std::popcount(a[w] ^ b[w]));
  return dist;
}

std::vector<std::size_t> rank_by_distance(const std::vector<std::uint32_t>& dist,
                                          std::uint32_t max_distance) {
  std::vector<std::size_t> offsets(static_cast<std::size_t>(max_distance) + 2, 0);
  for (const auto d : dist) {
    if (d > max_distance) throw ShapeError("distance exceeds the code length");
    ++offsets[d + 1];
  }
  for (std::size_t i = 1; i < offsets.size(); ++i) offsets[i] += offsets[i - 1];
  std::vector<std::size_t> order(dist.size());
  for (std::size_t i = 0; i < dist.size(); ++i) order[offsets[dist[i]]++] = i;
  return order;
}

HammingIndex::HammingIndex(CodeSet codes, bool buckets) : codes_(std::move(codes)) {
  if (!buckets || codes_.empty()) return;
  prefix_bits_ = std::min<std::size_t>(codes_.bits(), 16);
  const std::size_t table = std::size_t{1} << prefix_bits_;
  bucket_offsets_.assign(table + 1, 0);
  for (std::size_t i = 0; i < codes_.size(); ++i) ++bucket_offsets_[prefix_of(codes_.code(i)) + 1];
  for (std::size_t b = 1; b <= table; ++b) bucket_offsets_[b] += bucket_offsets_[b - 1];
  bucket_members_.resize(codes_.size());
  std::vector<std::uint32_t> fill(bucket_offsets_.begin(), bucket_offsets_.end() - 1);
  for (std::size_t i = 0; i < codes_.size(); ++i)
    bucket_members_[fill[prefix_of(codes_.code(i))]++] = static_cast<std::uint32_t>(i);
}

void HammingIndex::check_query(std::span<const std::uint64_t> query) const {
  if (codes_.empty()) throw EmptyIndexError("search on an empty index");
  if (query.size() != codes_.words_per_code())
    throw ShapeError("query has " + std::to_string(query.size()) + " words, index codes have " +
                     std::to_string(codes_.words_per_code()));
}

std::uint32_t HammingIndex::prefix_of(std::span<const std::uint64_t> code) const {
  const std::uint64_t mask = (std::uint64_t{1} << prefix_bits_) - 1;
  return static_cast<std::uint32_t>(code[0] & mask);
}

std::vector<std::uint32_t> HammingIndex::distances(std::span<const std::uint64_t> query) const {
  check_query(query);
  std::vector<std::uint32_t> dist(codes_.size());
  const std::size_t words = codes_.words_per_code();
  const std::uint64_t* base = codes_.storage().data();
  if (words == 1) {
    const std::uint64_t q = query[0];
    for (std::size_t i = 0; i < dist.size(); ++i)
      dist[i] = static_cast<std::uint32_t>(std::popcount(base[i] ^ q));
  } else {
    for (std::size_t i = 0; i < dist.size(); ++i) {
      std::uint32_t acc = 0;
      for (std::size_t w = 0; w < words; ++w)
        acc += static_cast<std::uint32_t>(std::popcount(base[i * words + w] ^ query[w]));
      dist[i] = acc;
    }
  }
  return dist;
}

SearchResult HammingIndex::finish(std::vector<std::size_t> positions,
                                  const std::vector<std::uint32_t>& dist) const {
  SearchResult result;
  result.ids.reserve(positions.size());
  result.distances.reserve(positions.size());
  for (const auto p : positions) {
    result.ids.push_back(codes_.id(p));
    result.distances.push_back(dist[p]);
  }
  result.positions = std::move(positions);
  return result;
}

SearchResult HammingIndex::search_ranked(std::span<const std::uint64_t> query,
                                         std::size_t top_n) const {
  if (top_n == 0) throw ParamError("top_n must be >= 1");
  const auto dist = distances(query);
  auto order = rank_by_distance(dist, static_cast<std::uint32_t>(codes_.bits()));
  if (order.size() > top_n) order.resize(top_n);
  return finish(std::move(order), dist);
}

SearchResult HammingIndex::search_radius(std::span<const std::uint64_t> query,
                                         std::uint32_t radius) const {
  check_query(query);
  if (radius > codes_.bits())
    throw ParamError("radius " + std::to_string(radius) + " exceeds l=" +
                     std::to_string(codes_.bits()));
  return has_buckets() ? radius_buckets(query, radius) : radius_scan(query, radius);
}

SearchResult HammingIndex::radius_scan(std::span<const std::uint64_t> query,
                                       std::uint32_t radius) const {
  const auto dist = distances(query);
  auto order = rank_by_distance(dist, static_cast<std::uint32_t>(codes_.bits()));
  const auto end = std::find_if(order.begin(), order.end(),
                                [&](std::size_t p) { return dist[p] > radius; });
  order.erase(end, order.end());
  return finish(std::move(order), dist);
}

SearchResult HammingIndex::radius_buckets(std::span<const std::uint64_t> query,
                                          std::uint32_t radius) const {
  // A code within radius r differs from the query in at most r prefix bits,
  // so only buckets whose key is within r of the query prefix are visited.
  const std::uint32_t qprefix = prefix_of(query);
  const std::size_t table = std::size_t{1} << prefix_bits_;
  std::vector<std::size_t> hits;
  std::vector<std::uint32_t> dist(codes_.size(), 0);
  for (std::size_t key = 0; key < table; ++key) {
    if (static_cast<std::uint32_t>(std::popcount(key ^ qprefix)) > radius) continue;
    for (std::uint32_t k = bucket_offsets_[key]; k < bucket_offsets_[key + 1]; ++k) {
      const std::uint32_t p = bucket_members_[k];
      const std::uint32_t d = hamming(query, codes_.code(p));
      if (d <= radius) {
        hits.push_back(p);
        dist[p] = d;
      }
    }
  }
  std::sort(hits.begin(), hits.end(), [&](std::size_t a, std::size_t b) {
    return dist[a] != dist[b] ? dist[a] < dist[b] : a < b;
  });
  return finish(std::move(hits), dist);
}

}  // namespace jpsh
