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

#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "cqnv/decoder.hpp"

namespace cqnv {

// LPC synthesis decoder used when no neural vocoder is available.
//
// Each frame excites 1/A(z) with a pitch-period impulse train (voiced) or
// uniform white noise (unvoiced). The excitation gain is solved per frame so
// that the frame's mean square, including the ringing carried over from the
// previous frame, equals the decoded energy whenever that is reachable.
class FallbackSynthesizer {
 public:
  explicit FallbackSynthesizer(std::uint64_t seed = 1);

  // Appends kFrameLength samples per frame to `out`.
  void synthesize_frame(const ConditioningFrame& frame, std::vector<double>& out);
  std::vector<double> synthesize(std::span<const ConditioningFrame> frames);

  void reset();

 private:
  std::uint64_t seed_;
  std::mt19937_64 rng_;
  std::array<double, kLpcOrder> memory_{};  // y[n-1], ..., y[n-10]
  double next_pulse_ = 0.0;                 // relative to the frame start
};

std::vector<double> synthesize_fallback(std::span<const ConditioningFrame> frames,
                                        std::uint64_t seed = 1);

}  // namespace cqnv
