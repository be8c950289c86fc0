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

#include "cqnv/synthetic_speech.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "cqnv/analysis.hpp"
#include "cqnv/wav.hpp"

namespace cqnv {
namespace {

constexpr double kFs = static_cast<double>(kSampleRate);
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Vowel {
  std::array<double, 3> formant;
  std::array<double, 3> bandwidth;
};

// Rough adult formant targets (Hz).
constexpr std::array<Vowel, 6> kVowels = {{
    {{730, 1090, 2440}, {80, 90, 120}},  // a
    {{270, 2290, 3010}, {60, 100, 120}}, // i
    {{300, 870, 2240}, {60, 90, 110}},   // u
    {{530, 1840, 2480}, {70, 100, 120}}, // e
    {{570, 840, 2410}, {70, 90, 120}},   // o
    {{640, 1190, 2390}, {80, 90, 120}},  // schwa-ish
}};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(gen_() >> 11) * 0x1.0p-53);
  }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }

 private:
  std::mt19937_64 gen_;
};

struct Resonator {
  double y1 = 0.0, y2 = 0.0;
  double step(double x, double freq, double bw) {
    const double r = std::exp(-std::numbers::pi * bw / kFs);
    const double c = 2.0 * r * std::cos(kTwoPi * freq / kFs);
    const double y = (1.0 - r) * x + c * y1 - r * r * y2;
    y2 = y1;
    y1 = y;
    return y;
  }
};

enum class Segment { Voiced, Fricative, Silence };

void envelope(std::vector<double>& seg, double attack_s) {
  const std::size_t ramp = std::min(seg.size() / 2, static_cast<std::size_t>(attack_s * kFs));
  for (std::size_t i = 0; i < ramp; ++i) {
    const double g = 0.5 - 0.5 * std::cos(std::numbers::pi * static_cast<double>(i) /
                                          static_cast<double>(ramp));
    seg[i] *= g;
    seg[seg.size() - 1 - i] *= g;
  }
}

void scale_rms(std::vector<double>& seg, double rms) {
  double acc = 0.0;
  for (double v : seg) acc += v * v;
  const double cur = std::sqrt(acc / static_cast<double>(std::max<std::size_t>(seg.size(), 1)));
  if (cur > 0.0) {
    for (double& v : seg) v *= rms / cur;
  }
}

}  // namespace

SyntheticUtterance synthesize_utterance(std::uint64_t seed, double seconds) {
  Rng rng(seed * 0x9E3779B97F4A7C15ull + 1);
  const auto total = static_cast<std::size_t>(seconds * kFs);
  const double base_f0 = rng.uniform(85.0, 230.0);
  const double formant_scale = rng.uniform(0.88, 1.15);

  SyntheticUtterance out;
  out.samples.reserve(total);
  std::vector<double> f0_track;  // per sample, 0 when unvoiced
  f0_track.reserve(total);

  double glottal_phase = 0.0;
  Segment prev = Segment::Silence;
  while (out.samples.size() < total) {
    Segment kind;
    const double pick = rng.uniform(0.0, 1.0);
    if (prev == Segment::Silence) {
      kind = pick < 0.8 ? Segment::Voiced : Segment::Fricative;
    } else {
      kind = pick < 0.55 ? Segment::Voiced : (pick < 0.8 ? Segment::Fricative : Segment::Silence);
    }
    if (out.samples.empty()) kind = Segment::Silence;

    double dur = 0.0;
    switch (kind) {
      case Segment::Voiced: dur = rng.uniform(0.15, 0.40); break;
      case Segment::Fricative: dur = rng.uniform(0.06, 0.15); break;
      case Segment::Silence: dur = rng.uniform(0.05, 0.20); break;
    }
    const std::size_t n = std::min(total - out.samples.size(),
                                   static_cast<std::size_t>(dur * kFs));
    std::vector<double> seg(n, 0.0);
    std::vector<double> seg_f0(n, 0.0);

    if (kind == Segment::Voiced) {
      const Vowel& v0 = kVowels[rng.index(kVowels.size())];
      const Vowel& v1 = kVowels[rng.index(kVowels.size())];
      const double f0_start = base_f0 * rng.uniform(0.85, 1.15);
      const double f0_end = base_f0 * rng.uniform(0.85, 1.15);
      const double vib_rate = rng.uniform(3.0, 6.0);
      std::array<Resonator, 3> formants{};
      Resonator tilt;
      Rng noise(seed ^ (out.samples.size() + 17));
      for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(std::max<std::size_t>(n - 1, 1));
        const double f0 = (f0_start + (f0_end - f0_start) * t) *
                          (1.0 + 0.01 * std::sin(kTwoPi * vib_rate * static_cast<double>(i) / kFs));
        seg_f0[i] = f0;
        glottal_phase += f0 / kFs;
        double x = 0.0;
        if (glottal_phase >= 1.0) {
          glottal_phase -= 1.0;
          x = 1.0;
        }
        x += 0.01 * noise.uniform(-1.0, 1.0);
        double y = tilt.step(x, 0.0, 600.0);
        double sum = 0.0;
        for (std::size_t k = 0; k < 3; ++k) {
          const double f = formant_scale * (v0.formant[k] + (v1.formant[k] - v0.formant[k]) * t);
          const double bw = v0.bandwidth[k];
          sum += formants[k].step(y, std::min(f, 3800.0), bw) * (k == 0 ? 1.0 : 0.6);
        }
        seg[i] = sum;
      }
      envelope(seg, 0.03);
      scale_rms(seg, rng.uniform(0.06, 0.2));
    } else if (kind == Segment::Fricative) {
      Resonator r1, r2;
      const double fc = rng.uniform(2400.0, 3600.0);
      Rng noise(seed ^ (out.samples.size() + 91));
      for (std::size_t i = 0; i < n; ++i) {
        const double x = noise.uniform(-1.0, 1.0);
        seg[i] = r1.step(x, fc, 900.0) + 0.3 * r2.step(x, 1500.0, 1500.0);
      }
      envelope(seg, 0.015);
      scale_rms(seg, rng.uniform(0.01, 0.04));
    } else {
      Rng noise(seed ^ (out.samples.size() + 5));
      for (auto& v : seg) v = 1e-4 * noise.uniform(-1.0, 1.0);
    }

    out.samples.insert(out.samples.end(), seg.begin(), seg.end());
    f0_track.insert(f0_track.end(), seg_f0.begin(), seg_f0.end());
    prev = kind;
  }

  double peak = 0.0;
  for (double v : out.samples) peak = std::max(peak, std::abs(v));
  if (peak > 0.9) {
    for (double& v : out.samples) v *= 0.9 / peak;
  }

  const std::size_t frames = (total + kFrameLength - 1) / kFrameLength;
  out.frame_f0.assign(frames, 0.0);
  for (std::size_t f = 0; f < frames; ++f) {
    double acc = 0.0;
    std::size_t voiced = 0, count = 0;
    for (std::size_t i = f * kFrameLength; i < std::min(total, (f + 1) * kFrameLength); ++i) {
      ++count;
      if (f0_track[i] > 0.0) {
        acc += f0_track[i];
        ++voiced;
      }
    }
    if (count > 0 && voiced == count) out.frame_f0[f] = acc / static_cast<double>(voiced);
  }
  return out;
}

void write_synthetic_corpus(const std::filesystem::path& dir, std::size_t count,
                            std::uint64_t seed, double min_seconds, double max_seconds) {
  std::filesystem::create_directories(dir);
  Rng rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const double secs = rng.uniform(min_seconds, max_seconds);
    const auto utt = synthesize_utterance(seed * 1000003ull + i, secs);
    char name[32];
    std::snprintf(name, sizeof name, "utt_%04zu.wav", i);
    write_wav(dir / name, utt.samples, kSampleRate);
  }
}

}  // namespace cqnv
