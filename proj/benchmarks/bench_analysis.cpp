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

#include "cqnv/analysis.hpp"
#include "cqnv/lpc.hpp"
#include "cqnv/synthetic_speech.hpp"

namespace {

void BM_LpcToLsp(benchmark::State& state) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> k(-0.95, 0.95);
  std::vector<double> refl(cqnv::kLpcOrder);
  for (auto& v : refl) v = k(rng);
  const auto a = cqnv::reflection_to_lpc(refl);
  cqnv::LpcVector lpc{};
  std::copy(a.begin(), a.end(), lpc.begin());
  for (auto _ : state) {
    benchmark::DoNotOptimize(cqnv::lpc_to_lsp(lpc));
  }
}
BENCHMARK(BM_LpcToLsp);

void BM_LspToLpc(benchmark::State& state) {
  const auto lsp = cqnv::flat_lsp();
  for (auto _ : state) {
    benchmark::DoNotOptimize(cqnv::lsp_to_lpc(lsp));
  }
}
BENCHMARK(BM_LspToLpc);

// One second of audio per iteration: 100 frames.
void BM_AnalyzeSecond(benchmark::State& state) {
  const auto utt = cqnv::synthesize_utterance(5, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cqnv::analyze_signal(utt.samples));
  }
  state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_AnalyzeSecond)->Unit(benchmark::kMillisecond);

}  // namespace
