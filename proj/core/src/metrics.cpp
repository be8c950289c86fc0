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

#include "cqnv/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include <nlohmann/json.hpp>

#include "cqnv/errors.hpp"

namespace cqnv {

double spectral_distortion(std::span<const double> lpc_ref,
                           std::span<const double> lpc_quant) {
  double acc = 0.0;
  for (std::size_t k = 0; k < kSpectralGridPoints; ++k) {
    const double w = std::numbers::pi * (static_cast<double>(k) + 0.5) /
                     static_cast<double>(kSpectralGridPoints);
    const double d = 10.0 * std::log10(lpc_power_response(lpc_quant, w) /
                                       lpc_power_response(lpc_ref, w));
    acc += d * d;
  }
  return std::sqrt(acc / static_cast<double>(kSpectralGridPoints));
}

void DistortionAccumulator::add_lsp(const LspVector& reference, const LspVector& quantized) {
  const auto a = lsp_to_lpc(reference);
  const auto b = lsp_to_lpc(quantized);
  const double sd = spectral_distortion(a, b);
  sd_sum_ += sd;
  if (sd > 2.0) ++over2_;
  if (sd > 4.0) ++over4_;
  ++lsp_frames_;
}

void DistortionAccumulator::add_pitch_energy(const PitchEnergyVector& reference,
                                             const PitchEnergyVector& quantized) {
  const double dp = reference.x_p - quantized.x_p;
  const double de = reference.x_e - quantized.x_e;
  sq_xp_ += dp * dp;
  sq_xe_ += de * de;
  ++pe_points_;
}

DistortionReport DistortionAccumulator::report() const {
  DistortionReport r;
  r.lsp_frames = lsp_frames_;
  r.pitch_energy_points = pe_points_;
  if (lsp_frames_ > 0) {
    const double n = static_cast<double>(lsp_frames_);
    r.mean_sd_db = sd_sum_ / n;
    r.outlier_pct_2db = 100.0 * static_cast<double>(over2_) / n;
    r.outlier_pct_4db = 100.0 * static_cast<double>(over4_) / n;
  }
  if (pe_points_ > 0) {
    const double n = static_cast<double>(pe_points_);
    r.rmse_xp = std::sqrt(sq_xp_ / n);
    r.rmse_xe = std::sqrt(sq_xe_ / n);
  }
  return r;
}

std::string DistortionReport::to_text() const {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "lsp_frames=%zu\nmean_sd_db=%.6f\noutlier_pct_2db=%.6f\n"
                "outlier_pct_4db=%.6f\npitch_energy_points=%zu\nrmse_xp=%.6f\n"
                "rmse_xe=%.6f\n",
                lsp_frames, mean_sd_db, outlier_pct_2db, outlier_pct_4db,
                pitch_energy_points, rmse_xp, rmse_xe);
  return buf;
}

std::string DistortionReport::to_json() const {
  nlohmann::ordered_json j;
  j["lsp_frames"] = lsp_frames;
  j["mean_sd_db"] = mean_sd_db;
  j["outlier_pct_2db"] = outlier_pct_2db;
  j["outlier_pct_4db"] = outlier_pct_4db;
  j["pitch_energy_points"] = pitch_energy_points;
  j["rmse_xp"] = rmse_xp;
  j["rmse_xe"] = rmse_xe;
  return j.dump(2);
}

ProfileQuantizer::ProfileQuantizer(QuantizerProfile profile) : profile_(std::move(profile)) {}

LspVector ProfileQuantizer::roundtrip_lsp(const LspVector& lsp) {
  return dequantize_lsp_packet(profile_, quantize_lsp_packet(profile_, lsp));
}

PitchEnergyVector ProfileQuantizer::roundtrip_pitch_energy(const PitchEnergyVector& x) {
  const std::array<double, 2> v{x.x_p, x.x_e};
  const auto r = predictive_quantize(profile_.pitch_energy(), profile_.predictor(), state_, v,
                                     kPitchEnergyDimWeights);
  return {r.reconstruction[0], r.reconstruction[1]};
}

DistortionReport evaluate_quantizer(ParameterQuantizer& quantizer,
                                    std::span<const std::vector<FrameParams>> corpus) {
  DistortionAccumulator acc;
  for (const auto& frames : corpus) {
    quantizer.reset();
    for (std::size_t i = 0; i < frames.size(); ++i) {
      if (i % kFramesPerPacket == 0) {
        acc.add_lsp(frames[i].lsp, quantizer.roundtrip_lsp(frames[i].lsp));
      }
      if (i % 2 == 0) {
        const auto x = pitch_energy_from_frame(frames[i]);
        acc.add_pitch_energy(x, quantizer.roundtrip_pitch_energy(x));
      }
    }
  }
  return acc.report();
}

}  // namespace cqnv
