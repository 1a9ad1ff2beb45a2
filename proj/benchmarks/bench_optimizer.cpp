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
#include "jpsh/anchors.hpp"
#include "jpsh/optimizer.hpp"

namespace jpsh {
namespace {

struct Problem {
  Hyperparams hyper;
  Matrix points;
  WorkState ws;
  Matrix codes;
  Matrix rotation;
};

// m d crosses the dense/iterative threshold between the two argument sets.
Problem make_problem(std::size_t d, std::size_t m) {
  Problem p;
  p.hyper.bits = 16;
  p.hyper.anchors = m;
  p.hyper.k = 5;
  p.hyper.psi = 5;
  p.points = bench::random_matrix(3000, d, 11);
  const AnchorSet anchors = kmeans(p.points, m, 1, 10);
  p.ws = make_work_state(p.points, anchors, p.hyper);
  p.codes = sign_of(bench::random_matrix(p.hyper.bits, m, 12));
  p.rotation = random_orthogonal(p.hyper.bits, 13);
  return p;
}

// Args: dimension, anchor count.
void BM_UpdateP(benchmark::State& state) {
  const Problem p = make_problem(static_cast<std::size_t>(state.range(0)),
                                 static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(update_p(p.ws, p.codes, p.rotation, p.hyper));
}
BENCHMARK(BM_UpdateP)->Args({32, 100})->Args({128, 100})->Args({784, 100})
    ->Unit(benchmark::kMillisecond);

void BM_UpdateW(benchmark::State& state) {
  const Problem p = make_problem(static_cast<std::size_t>(state.range(0)), 100);
  for (auto _ : state) benchmark::DoNotOptimize(update_w(p.ws, p.codes, p.rotation, p.hyper));
}
BENCHMARK(BM_UpdateW)->Arg(128)->Arg(784)->Unit(benchmark::kMillisecond);

// Args: dimension, anchor count.
void BM_TrainingIteration(benchmark::State& state) {
  Hyperparams hyper;
  hyper.bits = 16;
  hyper.anchors = static_cast<std::size_t>(state.range(1));
  hyper.k = 5;
  hyper.psi = 5;
  hyper.max_iters = 1;
  hyper.tol = 0.0;
  const PreparedData data =
      prepare(bench::random_features(3000, static_cast<std::size_t>(state.range(0)), 21), true);
  const AnchorSet anchors = make_anchors(data, hyper);
  for (auto _ : state) benchmark::DoNotOptimize(train(data, anchors, hyper));
}
BENCHMARK(BM_TrainingIteration)->Args({64, 100})->Args({784, 100})
    ->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace jpsh
