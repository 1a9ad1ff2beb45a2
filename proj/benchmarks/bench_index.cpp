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

#include <benchmark/benchmark.h>

#include "bench_data.hpp"
#include "jpsh/index.hpp"

namespace jpsh {
namespace {

// Args: database size, code length.
void BM_SearchRanked(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto bits = static_cast<std::size_t>(state.range(1));
  const HammingIndex index(bench::random_codes(n, bits, 1));
  const CodeSet queries = bench::random_codes(64, bits, 2);
  std::size_t q = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(index.search_ranked(queries.code(q++ % queries.size()), 100));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_SearchRanked)->Args({10000, 16})->Args({60000, 16})->Args({60000, 64})->Args({60000, 128});

// Args: database size, code length, radius, bucket table on/off.
void BM_SearchRadius(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto bits = static_cast<std::size_t>(state.range(1));
  const auto radius = static_cast<std::uint32_t>(state.range(2));
  const HammingIndex index(bench::random_codes(n, bits, 1), state.range(3) != 0);
  const CodeSet queries = bench::random_codes(64, bits, 2);
  std::size_t q = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(index.search_radius(queries.code(q++ % queries.size()), radius));
  }
}
BENCHMARK(BM_SearchRadius)
    ->Args({60000, 16, 2, 0})
    ->Args({60000, 16, 2, 1})
    ->Args({60000, 32, 2, 0})
    ->Args({60000, 32, 2, 1});

void BM_HammingDistance(benchmark::State& state) {
  const auto bits = static_cast<std::size_t>(state.range(0));
  const CodeSet codes = bench::random_codes(2, bits, 3);
  for (auto _ : state) benchmark::DoNotOptimize(hamming(codes.code(0), codes.code(1)));
}
BENCHMARK(BM_HammingDistance)->Arg(16)->Arg(64)->Arg(128);

}  // namespace
}  // namespace jpsh
