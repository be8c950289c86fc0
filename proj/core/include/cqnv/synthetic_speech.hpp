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

// Deterministic speech-like test signals: formant-filtered glottal pulse
// trains, fricative noise and pauses. Used to build desk-scale corpora for
// codebook training, evaluation and benchmarks.

#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace cqnv {

struct SyntheticUtterance {
  std::vector<double> samples;  // 8 kHz
  // Ground truth per 10 ms frame: F0 in Hz, 0 for unvoiced or silent frames.
  std::vector<double> frame_f0;
};

SyntheticUtterance synthesize_utterance(std::uint64_t seed, double seconds);

// Writes `count` utterances named utt_0000.wav, ... into `dir`. Durations are
// drawn uniformly from [min_seconds, max_seconds].
void write_synthetic_corpus(const std::filesystem::path& dir, std::size_t count,
                            std::uint64_t seed, double min_seconds = 1.5,
                            double max_seconds = 3.0);

}  // namespace cqnv
