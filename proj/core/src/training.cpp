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

#include "cqnv/training.hpp"

#include <cmath>

#include "cqnv/errors.hpp"
#include "cqnv/transforms.hpp"

namespace cqnv {

TrainingData collect_training_data(std::span<const std::vector<FrameParams>> utterances,
                                   const DistortionWeights& weights) {
  TrainingData out;
  const auto predictor = PredictorConfig::pitch_energy();
  for (const auto& frames : utterances) {
    for (const auto& f : frames) out.lsp.insert(out.lsp.end(), f.lsp.begin(), f.lsp.end());

    bool have_prev = false;
    PitchEnergyVector prev{};
    bool prev_voiced = false;
    double prev_wo = 0.0;
    for (std::size_t i = 0; i < frames.size(); i += 2) {
      const auto& f = frames[i];
      const auto x = pitch_energy_from_frame(f);
      double r_p = x.x_p, r_e = x.x_e;
      if (have_prev) {
        r_p -= predictor.coeff[0] * prev.x_p;
        r_e -= predictor.coeff[1] * prev.x_e;
      }
      out.pitch_energy_residual.push_back(r_p);
      out.pitch_energy_residual.push_back(r_e);
      const auto cls = classify_stationarity(f.voiced, f.wo, have_prev && prev_voiced, prev_wo);
      out.pitch_energy_weight.push_back(weights.weight(cls));
      prev = x;
      prev_voiced = f.voiced;
      prev_wo = f.wo;
      have_prev = true;
    }
  }
  return out;
}

LbgResult train_lsp_stage1(const TrainingData& data, const LbgOptions& options,
                           std::size_t size) {
  return lbg_train(data.lsp, kLpcOrder, size, {}, options);
}

SplitTrainingResult train_lsp_split(const TrainingData& data, const Codebook& stage1,
                                    std::size_t size, const LbgOptions& options) {
  if (stage1.dim() != kLpcOrder) {
    throw DimensionError("train_lsp_split stage-1 codebook", kLpcOrder, stage1.dim());
  }
  const std::size_t n = data.lsp_count();
  std::vector<double> odd, even;
  odd.reserve(n * kSplitDim);
  even.reserve(n * kSplitDim);
  for (std::size_t i = 0; i < n; ++i) {
    std::span<const double> x(data.lsp.data() + i * kLpcOrder, kLpcOrder);
    const auto c = stage1.entry(nearest_code(stage1, x).index);
    for (std::size_t k = 0; k < kSplitDim; ++k) {
      odd.push_back(x[2 * k] - static_cast<double>(c[2 * k]));
      even.push_back(x[2 * k + 1] - static_cast<double>(c[2 * k + 1]));
    }
  }
  return {lbg_train(odd, kSplitDim, size, {}, options),
          lbg_train(even, kSplitDim, size, {}, options)};
}

LbgResult train_pitch_energy(const TrainingData& data, std::size_t size,
                             const LbgOptions& options) {
  // Per-dimension weights are realized by scaling: centroids commute with
  // axis scaling, so training in the scaled space and unscaling the book
  // minimizes the weighted error.
  std::array<double, kPitchEnergyDim> scale{};
  for (std::size_t i = 0; i < kPitchEnergyDim; ++i) scale[i] = std::sqrt(kPitchEnergyDimWeights[i]);
  auto scaled = data.pitch_energy_residual;
  for (std::size_t i = 0; i < scaled.size(); ++i) scaled[i] *= scale[i % kPitchEnergyDim];
  auto r = lbg_train(scaled, kPitchEnergyDim, size, data.pitch_energy_weight, options);
  std::vector<float> values(r.codebook.values().begin(), r.codebook.values().end());
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = static_cast<float>(values[i] / scale[i % kPitchEnergyDim]);
  }
  r.codebook = Codebook(kPitchEnergyDim, std::move(values));
  return r;
}

CodebookSet train_all_codebooks(const TrainingData& data, const LbgOptions& options,
                                std::string* log) {
  CodebookSet set;
  auto record = [&](const char* name, const LbgResult& r) {
    if (log) *log += std::string("# ") + name + "\n" + format_training_log(r.log);
  };
  auto s1 = train_lsp_stage1(data, options);
  record("lsp1", s1);
  set.lsp_stage1 = s1.codebook;

  auto fine = train_lsp_split(data, set.lsp_stage1, kLspResidualFineSize, options);
  record("lsp_odd_512", fine.odd);
  record("lsp_even_512", fine.even);
  set.lsp_odd_fine = fine.odd.codebook;
  set.lsp_even_fine = fine.even.codebook;

  auto coarse = train_lsp_split(data, set.lsp_stage1, kLspResidualCoarseSize, options);
  record("lsp_odd_128", coarse.odd);
  record("lsp_even_128", coarse.even);
  set.lsp_odd_coarse = coarse.odd.codebook;
  set.lsp_even_coarse = coarse.even.codebook;

  auto pe_fine = train_pitch_energy(data, kPitchEnergyFineSize, options);
  record("pe_256", pe_fine);
  set.pe_fine = pe_fine.codebook;

  auto pe_coarse = train_pitch_energy(data, kPitchEnergyCoarseSize, options);
  record("pe_64", pe_coarse);
  set.pe_coarse = pe_coarse.codebook;
  return set;
}

}  // namespace cqnv
