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

#include "cqnv/analysis.hpp"

#include <algorithm>
#include <numbers>
#include <string>

#include "cqnv/errors.hpp"

namespace cqnv {

std::vector<AudioFrame> frame_signal(std::span<const double> pcm,
                                     std::size_t frame_len) {
  if (frame_len != kFrameLength) {
    throw InvalidArgument("frame_signal: frame length must be " +
                          std::to_string(kFrameLength));
  }
  if (pcm.empty()) throw EmptyInputError("frame_signal: empty input");
  const std::size_t n_frames = (pcm.size() + frame_len - 1) / frame_len;
  std::vector<AudioFrame> frames(n_frames);
  for (std::size_t f = 0; f < n_frames; ++f) {
    const std::size_t begin = f * frame_len;
    const std::size_t count = std::min(frame_len, pcm.size() - begin);
    frames[f].fill(0.0);
    std::copy_n(pcm.begin() + static_cast<std::ptrdiff_t>(begin), count,
                frames[f].begin());
  }
  return frames;
}

double compute_energy(std::span<const double> frame) {
  if (frame.empty()) return 0.0;
  double acc = 0.0;
  for (double s : frame) acc += s * s;
  return acc / static_cast<double>(frame.size());
}

bool classify_voicing(std::span<const double> frame, double pitch_confidence) {
  return pitch_confidence > kVoicingCorrelationThreshold &&
         compute_energy(frame) > kVoicingEnergyThreshold;
}

LspVector flat_lsp() {
  LspVector lsp{};
  for (std::size_t k = 0; k < kLpcOrder; ++k) {
    lsp[k] = std::numbers::pi * static_cast<double>(k + 1) /
             static_cast<double>(kLpcOrder + 1);
  }
  return lsp;
}

FrameAnalyzer::FrameAnalyzer() { reset(); }

void FrameAnalyzer::reset() {
  previous_.fill(0.0);
  pitch_.reset();
  frame_index_ = 0;
}

FrameParams FrameAnalyzer::analyze(const AudioFrame& frame) {
  std::array<double, 2 * kFrameLength> window{};
  std::copy(previous_.begin(), previous_.end(), window.begin());
  std::copy(frame.begin(), frame.end(), window.begin() + kFrameLength);

  FrameParams out;
  const auto lpc = lpc_analyze(window);
  out.lsp = lpc.silent ? flat_lsp() : lpc_to_lsp(lpc.coeffs, frame_index_);

  const auto pitch = pitch_.process(frame);
  out.wo = pitch.wo;
  out.energy = compute_energy(frame);
  out.voiced = classify_voicing(frame, pitch.confidence);
  pitch_.set_previous_voiced(out.voiced);

  previous_ = frame;
  ++frame_index_;
  return out;
}

std::vector<FrameParams> analyze_signal(std::span<const double> pcm) {
  const auto frames = frame_signal(pcm);
  FrameAnalyzer analyzer;
  std::vector<FrameParams> out;
  out.reserve(frames.size());
  for (const auto& f : frames) out.push_back(analyzer.analyze(f));
  return out;
}

}  // namespace cqnv
