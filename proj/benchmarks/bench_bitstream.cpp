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

#include "cqnv/bitstream.hpp"

namespace {

cqnv::Packet random_packet(std::mt19937_64& rng) {
  cqnv::Packet p;
  p.lsp = {static_cast<std::uint32_t>(rng() & 511), static_cast<std::uint32_t>(rng() & 127),
           static_cast<std::uint32_t>(rng() & 127)};
  p.pitch_energy = {static_cast<std::uint32_t>(rng() & 63), static_cast<std::uint32_t>(rng() & 63)};
  for (auto& b : p.voicing) b = rng() & 1u;
  return p;
}

void BM_PackUnpack(benchmark::State& state) {
  std::mt19937_64 rng(6);
  const auto p = random_packet(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cqnv::unpack(cqnv::CodecVersion::CqnvV3,
                                          cqnv::pack(cqnv::CodecVersion::CqnvV3, p)));
  }
}
BENCHMARK(BM_PackUnpack);

void BM_ContainerRoundTrip(benchmark::State& state) {
  std::mt19937_64 rng(7);
  cqnv::EncodedStream s{cqnv::CodecVersion::CqnvV3, {}};
  for (int i = 0; i < state.range(0); ++i) s.packets.push_back(random_packet(rng));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cqnv::read_container(cqnv::write_container(s)));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ContainerRoundTrip)->Arg(25)->Arg(1500);

}  // namespace
