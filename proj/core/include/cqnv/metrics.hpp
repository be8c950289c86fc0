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

// Objective quantizer measurements: log-spectral distortion of LSP
// quantization and RMSE of the pitch/energy transforms.

#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "cqnv/analysis.hpp"
#include "cqnv/quantizers.hpp"

namespace cqnv {

inline constexpr std::size_t kSpectralGridPoints = 256;

// RMS over w_k = (k + 1/2) pi / 256, k = 0..255, of
// 10 log10 |A_ref(w)|^-2 - 10 log10 |A_q(w)|^-2, in dB.
double spectral_distortion(std::span<const double> lpc_ref,
                           std::span<const double> lpc_quant);

struct DistortionReport {
  std::size_t lsp_frames = 0;
  double mean_sd_db = 0.0;
  double outlier_pct_2db = 0.0;  // percent of frames with SD > 2 dB
  double outlier_pct_4db = 0.0;  // percent of frames with SD > 4 dB
  std::size_t pitch_energy_points = 0;
  double rmse_xp = 0.0;
  double rmse_xe = 0.0;

  // `key=value` lines in a fixed order.
  std::string to_text() const;
  std::string to_json() const;
};

class DistortionAccumulator {
 public:
  void add_lsp(const LspVector& reference, const LspVector& quantized);
  void add_pitch_energy(const PitchEnergyVector& reference,
                        const PitchEnergyVector& quantized);
  DistortionReport report() const;

 private:
  std::size_t lsp_frames_ = 0;
  double sd_sum_ = 0.0;
  std::size_t over2_ = 0, over4_ = 0;
  std::size_t pe_points_ = 0;
  double sq_xp_ = 0.0, sq_xe_ = 0.0;
};

// Round trip through some quantizer, one stream at a time.
class ParameterQuantizer {
 public:
  virtual ~ParameterQuantizer() = default;
  virtual void reset() = 0;
  virtual LspVector roundtrip_lsp(const LspVector& lsp) = 0;
  // Called once per pitch/energy sample point, in stream order.
  virtual PitchEnergyVector roundtrip_pitch_energy(const PitchEnergyVector& x) = 0;
};

class IdentityQuantizer final : public ParameterQuantizer {
 public:
  void reset() override {}
  LspVector roundtrip_lsp(const LspVector& lsp) override { return lsp; }
  PitchEnergyVector roundtrip_pitch_energy(const PitchEnergyVector& x) override { return x; }
};

class ProfileQuantizer final : public ParameterQuantizer {
 public:
  explicit ProfileQuantizer(QuantizerProfile profile);
  void reset() override { state_ = {}; }
  LspVector roundtrip_lsp(const LspVector& lsp) override;
  PitchEnergyVector roundtrip_pitch_energy(const PitchEnergyVector& x) override;

 private:
  QuantizerProfile profile_;
  PredictiveState state_;
};

// LSPs are measured at packet anchors (every 4th frame), pitch/energy at
// the sample points (every 2nd frame), matching the packet layout.
DistortionReport evaluate_quantizer(ParameterQuantizer& quantizer,
                                    std::span<const std::vector<FrameParams>> corpus);

}  // namespace cqnv
