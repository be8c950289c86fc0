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

// Per-frame parametric analysis of 8 kHz speech: 10 ms frames -> LSPs, pitch,
// energy and a 1-bit voicing decision.

#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "cqnv/lpc.hpp"
#include "cqnv/pitch.hpp"

namespace cqnv {

inline constexpr int kSampleRate = 8000;
inline constexpr std::size_t kFrameLength = 80;  // 10 ms
inline constexpr double kVoicingCorrelationThreshold = 0.5;
inline constexpr double kVoicingEnergyThreshold = 1e-6;

using AudioFrame = std::array<double, kFrameLength>;

struct FrameParams {
  LspVector lsp{};
  double wo = 0.0;      // radians/sample
  double energy = 0.0;  // mean square
  bool voiced = false;
};

// Splits PCM into consecutive, non-overlapping frames; the trailing partial
// frame is zero-padded. Throws EmptyInputError on empty input and
// InvalidArgument when frame_len != kFrameLength.
std::vector<AudioFrame> frame_signal(std::span<const double> pcm,
                                     std::size_t frame_len = kFrameLength);

// Mean of squared samples.
double compute_energy(std::span<const double> frame);

bool classify_voicing(std::span<const double> frame, double pitch_confidence);

// LSPs of the flat filter A(z) = 1: k*pi/11, k = 1..10.
LspVector flat_lsp();

// Streaming analyzer. The LPC window spans the previous and the current
// frame (160-sample Hamming). One analyzer per stream.
class FrameAnalyzer {
 public:
  FrameAnalyzer();

  FrameParams analyze(const AudioFrame& frame);
  void reset();

  long frames_processed() const { return frame_index_; }

 private:
  AudioFrame previous_{};
  PitchTracker pitch_;
  long frame_index_ = 0;
};

// Convenience wrapper: frame the signal and analyze every frame.
std::vector<FrameParams> analyze_signal(std::span<const double> pcm);

}  // namespace cqnv
