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

#include "cqnv/synthesis.hpp"

#include <cmath>
#include <numbers>

namespace cqnv {
namespace {

// All-pole filter 1/A(z) over `in`, updating `memory` (most recent first).
std::array<double, kFrameLength> run_filter(const LpcVector& a,
                                            std::span<const double, kFrameLength> in,
                                            std::array<double, kLpcOrder>& memory) {
  std::array<double, kFrameLength> y{};
  for (std::size_t n = 0; n < kFrameLength; ++n) {
    double v = in[n];
    for (std::size_t i = 0; i < kLpcOrder; ++i) v -= a[i] * memory[i];
    for (std::size_t i = kLpcOrder - 1; i > 0; --i) memory[i] = memory[i - 1];
    memory[0] = v;
    y[n] = v;
  }
  return y;
}

}  // namespace

FallbackSynthesizer::FallbackSynthesizer(std::uint64_t seed) : seed_(seed), rng_(seed) {}

void FallbackSynthesizer::reset() {
  rng_.seed(seed_);
  memory_.fill(0.0);
  next_pulse_ = 0.0;
}

void FallbackSynthesizer::synthesize_frame(const ConditioningFrame& frame,
                                           std::vector<double>& out) {
  const LpcVector a = frame.lpc();
  const double target = inverse_transform_energy(frame.energy_db);

  std::array<double, kFrameLength> excitation{};
  if (frame.voiced) {
    const double period = 2.0 * std::numbers::pi / frame.wo;
    while (next_pulse_ < static_cast<double>(kFrameLength)) {
      const auto pos = static_cast<std::size_t>(std::lround(std::max(next_pulse_, 0.0)));
      if (pos < kFrameLength) excitation[pos] += 1.0;
      next_pulse_ += period;
    }
    next_pulse_ -= static_cast<double>(kFrameLength);
  } else {
    for (auto& e : excitation) {
      e = 2.0 * (static_cast<double>(rng_() >> 11) * 0x1.0p-53) - 1.0;
    }
    next_pulse_ = 0.0;
  }

  const std::array<double, kFrameLength> zeros{};
  auto zir_memory = memory_;
  const auto zir = run_filter(a, zeros, zir_memory);
  std::array<double, kLpcOrder> zero_memory{};
  const auto zsr = run_filter(a, excitation, zero_memory);

  double s_zz = 0.0, s_rz = 0.0, s_rr = 0.0;
  for (std::size_t n = 0; n < kFrameLength; ++n) {
    s_zz += zsr[n] * zsr[n];
    s_rz += zir[n] * zsr[n];
    s_rr += zir[n] * zir[n];
  }
  const double len = static_cast<double>(kFrameLength);
  const double ringing = s_rr / len;

  // Solve qa g^2 + 2 qb g + qc = 0 for the non-negative gain, where alpha
  // scales the carried-over filter state.
  auto solve = [&](double alpha) {
    const double qa = s_zz / len, qb = alpha * s_rz / len;
    const double qc = alpha * alpha * ringing - target;
    const double disc = qb * qb - qa * qc;
    if (qa <= 0.0 || disc < 0.0) return -1.0;
    return (-qb + std::sqrt(disc)) / qa;
  };

  double alpha = 1.0;
  double gain = 0.0;
  if (s_zz <= 0.0) {
    // No pulse lands in this frame: the ringing alone has to carry the energy.
    if (ringing > 0.0) alpha = std::sqrt(target / ringing);
  } else {
    gain = solve(1.0);
    if (gain < 0.0) {
      // Ringing from a louder previous frame exceeds the target; attenuate it
      // to half the target so the excitation can make up the rest.
      alpha = std::sqrt(0.5 * target / ringing);
      gain = std::max(solve(alpha), 0.0);
    }
  }

  for (auto& m : memory_) m *= alpha;
  for (auto& e : excitation) e *= gain;
  const auto y = run_filter(a, excitation, memory_);
  out.insert(out.end(), y.begin(), y.end());
}

std::vector<double> FallbackSynthesizer::synthesize(std::span<const ConditioningFrame> frames) {
  std::vector<double> out;
  out.reserve(frames.size() * kFrameLength);
  for (const auto& f : frames) synthesize_frame(f, out);
  return out;
}

std::vector<double> synthesize_fallback(std::span<const ConditioningFrame> frames,
                                        std::uint64_t seed) {
  FallbackSynthesizer synth(seed);
  return synth.synthesize(frames);
}

}  // namespace cqnv
