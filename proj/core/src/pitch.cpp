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

#include "cqnv/pitch.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cqnv/analysis.hpp"

namespace cqnv {
namespace {

constexpr std::size_t kFirTaps = 31;
constexpr double kCutoffHz = 1000.0;
// A sub-multiple lag replaces the best lag when it scores at least this
// fraction of the best; suppresses octave-down errors on pulse-like input.
constexpr double kSubmultipleRatio = 0.85;

std::vector<double> design_lowpass() {
  std::vector<double> h(kFirTaps);
  const double fc = kCutoffHz / static_cast<double>(kSampleRate);
  const double mid = static_cast<double>(kFirTaps - 1) / 2.0;
  double sum = 0.0;
  for (std::size_t n = 0; n < kFirTaps; ++n) {
    const double t = static_cast<double>(n) - mid;
    const double sinc =
        t == 0.0 ? 2.0 * fc
                 : std::sin(2.0 * std::numbers::pi * fc * t) /
                       (std::numbers::pi * t);
    const double win =
        0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * static_cast<double>(n) /
                               static_cast<double>(kFirTaps - 1));
    h[n] = sinc * win;
    sum += h[n];
  }
  for (auto& v : h) v /= sum;  // unity DC gain
  return h;
}

}  // namespace

PitchTracker::PitchTracker() : taps_(design_lowpass()) { reset(); }

void PitchTracker::reset() {
  fir_history_.assign(kFirTaps, 0.0);
  fir_pos_ = 0;
  buffer_.assign(kWindow + kMaxLag, 0.0);
  prev_lag_ = 0.0;
  prev_voiced_ = false;
}

double PitchTracker::lowpass(double x) {
  fir_history_[fir_pos_] = x;
  double acc = 0.0;
  std::size_t idx = fir_pos_;
  for (std::size_t k = 0; k < kFirTaps; ++k) {
    acc += taps_[k] * fir_history_[idx];
    idx = idx == 0 ? kFirTaps - 1 : idx - 1;
  }
  fir_pos_ = (fir_pos_ + 1) % kFirTaps;
  return acc;
}

double PitchTracker::correlation(std::size_t lag) const {
  const std::size_t end = buffer_.size();
  const std::size_t start = end - kWindow;
  double cross = 0.0, e_cur = 0.0, e_lag = 0.0;
  for (std::size_t n = start; n < end; ++n) {
    const double a = buffer_[n];
    const double b = buffer_[n - lag];
    cross += a * b;
    e_cur += a * a;
    e_lag += b * b;
  }
  const double denom = std::sqrt(e_cur * e_lag);
  return denom > 0.0 ? cross / denom : 0.0;
}

PitchEstimate PitchTracker::process(std::span<const double> frame) {
  const std::size_t n = frame.size();
  if (n >= buffer_.size()) {
    for (std::size_t i = 0; i + buffer_.size() < n; ++i) lowpass(frame[i]);
    for (std::size_t i = n - buffer_.size(); i < n; ++i) {
      buffer_[i - (n - buffer_.size())] = lowpass(frame[i]);
    }
  } else {
    std::shift_left(buffer_.begin(), buffer_.end(),
                    static_cast<std::ptrdiff_t>(n));
    for (std::size_t i = 0; i < n; ++i) {
      buffer_[buffer_.size() - n + i] = lowpass(frame[i]);
    }
  }

  std::vector<double> r(kMaxLag + 1, 0.0);
  for (std::size_t lag = kMinLag; lag <= kMaxLag; ++lag) r[lag] = correlation(lag);

  auto score = [&](std::size_t lag) {
    double s = r[lag];
    if (prev_voiced_ && prev_lag_ > 0.0 &&
        std::abs(static_cast<double>(lag) - prev_lag_) <=
            kContinuityBias * prev_lag_) {
      s *= 1.0 + kContinuityBias;
    }
    return s;
  };

  std::size_t best = kMinLag;
  double best_score = score(kMinLag);
  for (std::size_t lag = kMinLag + 1; lag <= kMaxLag; ++lag) {
    const double s = score(lag);
    if (s > best_score) {
      best_score = s;
      best = lag;
    }
  }

  // Prefer the shortest sub-multiple of the winning lag that is nearly as
  // periodic.
  if (r[best] > 0.0) {
    for (std::size_t div = 4; div >= 2; --div) {
      const double centre = static_cast<double>(best) / static_cast<double>(div);
      const auto lo = static_cast<std::size_t>(std::max(
          static_cast<double>(kMinLag), std::floor(centre) - 1.0));
      const auto hi = static_cast<std::size_t>(std::min(
          static_cast<double>(kMaxLag), std::ceil(centre) + 1.0));
      if (lo > hi || hi < kMinLag) continue;
      std::size_t cand = lo;
      for (std::size_t lag = lo + 1; lag <= hi; ++lag) {
        if (r[lag] > r[cand]) cand = lag;
      }
      if (r[cand] >= kSubmultipleRatio * r[best]) {
        best = cand;
        break;
      }
    }
  }

  double lag = static_cast<double>(best);
  if (best > kMinLag && best < kMaxLag) {
    const double a = r[best - 1], b = r[best], c = r[best + 1];
    const double denom = a - 2.0 * b + c;
    if (denom < 0.0) {
      lag += std::clamp(0.5 * (a - c) / denom, -0.5, 0.5);
    }
  }

  const double fs = static_cast<double>(kSampleRate);
  const double wo_min = 2.0 * std::numbers::pi * kMinF0Hz / fs;
  const double wo_max = 2.0 * std::numbers::pi * kMaxF0Hz / fs;
  PitchEstimate est;
  est.wo = std::clamp(2.0 * std::numbers::pi / lag, wo_min, wo_max);
  est.confidence = r[best];
  prev_lag_ = 2.0 * std::numbers::pi / est.wo;
  return est;
}

}  // namespace cqnv
