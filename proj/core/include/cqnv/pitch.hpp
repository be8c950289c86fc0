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

#include <cstddef>
#include <span>
#include <vector>

namespace cqnv {

inline constexpr double kMinF0Hz = 50.0;
inline constexpr double kMaxF0Hz = 400.0;

struct PitchEstimate {
  double wo = 0.0;          // radians/sample, clamped to [2pi*50/fs, 2pi*400/fs]
  double confidence = 0.0;  // normalized autocorrelation at the chosen lag
};

// Normalized-autocorrelation pitch tracker.
//
// The input is low-pass filtered at 1 kHz and correlated over lags covering
// 50..400 Hz. Lags within 5% of the previous voiced frame's lag get a 5%
// score bonus. State is per stream; do not share one tracker across threads.
class PitchTracker {
 public:
  static constexpr std::size_t kWindow = 240;
  static constexpr std::size_t kMinLag = 20;   // 400 Hz at 8 kHz
  static constexpr std::size_t kMaxLag = 160;  // 50 Hz at 8 kHz
  static constexpr double kContinuityBias = 0.05;

  PitchTracker();

  // Consumes one frame of new samples and returns the estimate for the
  // analysis window ending at the last sample.
  PitchEstimate process(std::span<const double> frame);

  // Caller-provided voicing decision for the frame just processed; enables
  // the continuity bias on the next call.
  void set_previous_voiced(bool voiced) { prev_voiced_ = voiced; }

  void reset();

 private:
  double lowpass(double x);
  double correlation(std::size_t lag) const;

  std::vector<double> taps_;
  std::vector<double> fir_history_;
  std::size_t fir_pos_ = 0;
  std::vector<double> buffer_;  // filtered, kWindow + kMaxLag samples
  double prev_lag_ = 0.0;
  bool prev_voiced_ = false;
};

}  // namespace cqnv
