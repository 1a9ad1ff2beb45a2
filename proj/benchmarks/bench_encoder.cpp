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
#include "jpsh/baselines.hpp"
#include "jpsh/encoder.hpp"
#include "jpsh/optimizer.hpp"

namespace jpsh {
namespace {

JpshModel small_model(std::size_t d, std::size_t bits, std::size_t m) {
  Hyperparams hyper;
  hyper.bits = bits;
  hyper.anchors = m;
  hyper.k = 5;
  hyper.psi = 5;
  hyper.max_iters = 2;
  hyper.kmeans_iters = 10;
  return train(bench::random_features(2000, d, 7), hyper).model;
}

// Args: dimension, code length, anchor count.
void BM_EncodeBatch(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const JpshModel model = small_model(d, static_cast<std::size_t>(state.range(1)),
                                      static_cast<std::size_t>(state.range(2)));
  const Encoder encoder(model);
  const FeatureSet batch = bench::random_features(1000, d, 8);
  for (auto _ : state) benchmark::DoNotOptimize(encoder.encode_batch(batch));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(batch.size()));
}
BENCHMARK(BM_EncodeBatch)->Args({64, 16, 50})->Args({784, 16, 100})->Args({784, 64, 100})
    ->Unit(benchmark::kMillisecond);

void BM_LshEncodeBatch(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const LshModel model = lsh_train(d, static_cast<std::size_t>(state.range(1)), 1);
  const FeatureSet batch = bench::random_features(1000, d, 8);
  for (auto _ : state) benchmark::DoNotOptimize(lsh_encode_batch(model, batch));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(batch.size()));
}
BENCHMARK(BM_LshEncodeBatch)->Args({784, 16})->Args({784, 64})->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace jpsh
