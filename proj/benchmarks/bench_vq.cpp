/*
Copyright 2026 The CQNV Authors. All rights reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "cqnv/lbg.hpp"
#include "cqnv/vq.hpp"

namespace {

cqnv::Codebook make_book(std::size_t size, std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<float> u(0.0f, 1.0f);
  std::vector<float> v(size * dim);
  for (auto& x : v) x = u(rng);
  return cqnv::Codebook(dim, std::move(v));
}

void BM_NearestCode(benchmark::State& state) {
  const auto size = static_cast<std::size_t>(state.range(0));
  const auto dim = static_cast<std::size_t>(state.range(1));
  const auto cb = make_book(size, dim, 1);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::vector<double>> queries(256, std::vector<double>(dim));
  for (auto& q : queries) for (auto& x : q) x = u(rng);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cqnv::nearest_code(cb, queries[i++ & 255]));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_NearestCode)->Args({512, 10})->Args({512, 5})->Args({128, 5})->Args({64, 2});

void BM_LbgTrain(benchmark::State& state) {
  const auto target = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> data(4000 * 2);
  for (auto& x : data) x = g(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cqnv::lbg_train(data, 2, target));
  }
}
BENCHMARK(BM_LbgTrain)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace
