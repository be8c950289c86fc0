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

#include "cqnv/vq.hpp"

#include <string>

#include "cqnv/errors.hpp"

namespace cqnv {
namespace {

void check_predictor(const Codebook& cb, const PredictorConfig& cfg,
                     const PredictiveState& state) {
  if (cfg.coeff.size() != cb.dim()) {
    throw DimensionError("predictor coefficients", cb.dim(), cfg.coeff.size());
  }
  if (state.initialized && state.prev_decoded.size() != cb.dim()) {
    throw DimensionError("predictive state", cb.dim(), state.prev_decoded.size());
  }
}

std::vector<double> prediction(const PredictorConfig& cfg,
                               const PredictiveState& state) {
  std::vector<double> p(cfg.coeff.size(), 0.0);
  if (!state.initialized) return p;
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = cfg.coeff[i] * state.prev_decoded[i];
  }
  return p;
}

std::vector<double> advance(const Codebook& cb, const PredictorConfig& cfg,
                            PredictiveState& state, std::size_t index) {
  if (index >= cb.size()) {
    throw OverflowError("predictive index " + std::to_string(index) +
                        " out of range for codebook of size " +
                        std::to_string(cb.size()));
  }
  auto recon = prediction(cfg, state);
  const auto code = cb.entry(index);
  for (std::size_t i = 0; i < recon.size(); ++i) {
    recon[i] += static_cast<double>(code[i]);
  }
  state.prev_decoded = recon;
  state.initialized = true;
  return recon;
}

}  // namespace

double weighted_sq_error(std::span<const float> code, std::span<const double> x,
                         std::span<const double> weights) {
  double d = 0.0;
  if (weights.empty()) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double e = x[i] - static_cast<double>(code[i]);
      d += e * e;
    }
  } else {
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double e = x[i] - static_cast<double>(code[i]);
      d += weights[i] * e * e;
    }
  }
  return d;
}

NearestResult nearest_code(const Codebook& cb, std::span<const double> x,
                           std::span<const double> weights) {
  if (x.size() != cb.dim()) throw DimensionError("nearest_code", cb.dim(), x.size());
  if (!weights.empty() && weights.size() != cb.dim()) {
    throw DimensionError("nearest_code weights", cb.dim(), weights.size());
  }
  NearestResult best{0, weighted_sq_error(cb.entry(0), x, weights)};
  for (std::size_t k = 1; k < cb.size(); ++k) {
    const double d = weighted_sq_error(cb.entry(k), x, weights);
    if (d < best.distortion) best = {k, d};
  }
  return best;
}

void split_odd_even(const LspVector& x, std::span<double, kSplitDim> odd,
                    std::span<double, kSplitDim> even) {
  for (std::size_t i = 0; i < kSplitDim; ++i) {
    odd[i] = x[2 * i];
    even[i] = x[2 * i + 1];
  }
}

TwoStageSplitResult quantize_two_stage_split(const Codebook& stage1,
                                             const Codebook& odd,
                                             const Codebook& even,
                                             const LspVector& x) {
  if (stage1.dim() != kLpcOrder) {
    throw DimensionError("two-stage stage-1 codebook", kLpcOrder, stage1.dim());
  }
  if (odd.dim() != kSplitDim) throw DimensionError("odd codebook", kSplitDim, odd.dim());
  if (even.dim() != kSplitDim) throw DimensionError("even codebook", kSplitDim, even.dim());

  TwoStageSplitResult out;
  out.stage1 = nearest_code(stage1, x).index;
  const auto c1 = stage1.entry(out.stage1);
  LspVector residual{};
  for (std::size_t i = 0; i < kLpcOrder; ++i) residual[i] = x[i] - c1[i];

  std::array<double, kSplitDim> r_odd{}, r_even{};
  split_odd_even(residual, r_odd, r_even);
  out.odd = nearest_code(odd, r_odd).index;
  out.even = nearest_code(even, r_even).index;
  out.reconstruction =
      reconstruct_two_stage_split(stage1, odd, even, out.stage1, out.odd, out.even);
  return out;
}

LspVector reconstruct_two_stage_split(const Codebook& stage1,
                                      const Codebook& odd,
                                      const Codebook& even, std::size_t i1,
                                      std::size_t i_odd, std::size_t i_even) {
  if (i1 >= stage1.size() || i_odd >= odd.size() || i_even >= even.size()) {
    throw OverflowError("two-stage split index out of codebook range");
  }
  LspVector out{};
  const auto c1 = stage1.entry(i1);
  const auto co = odd.entry(i_odd);
  const auto ce = even.entry(i_even);
  for (std::size_t i = 0; i < kSplitDim; ++i) {
    out[2 * i] = static_cast<double>(c1[2 * i]) + static_cast<double>(co[i]);
    out[2 * i + 1] = static_cast<double>(c1[2 * i + 1]) + static_cast<double>(ce[i]);
  }
  return out;
}

PredictorConfig PredictorConfig::pitch_energy() { return {{0.8, 0.9}}; }

PredictiveResult predictive_quantize(const Codebook& cb,
                                     const PredictorConfig& cfg,
                                     PredictiveState& state,
                                     std::span<const double> x,
                                     std::span<const double> weights) {
  if (x.size() != cb.dim()) throw DimensionError("predictive_quantize", cb.dim(), x.size());
  check_predictor(cb, cfg, state);
  const auto p = prediction(cfg, state);
  std::vector<double> residual(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) residual[i] = x[i] - p[i];
  PredictiveResult out;
  out.index = nearest_code(cb, residual, weights).index;
  out.reconstruction = advance(cb, cfg, state, out.index);
  return out;
}

std::vector<double> predictive_dequantize(const Codebook& cb,
                                          const PredictorConfig& cfg,
                                          PredictiveState& state,
                                          std::size_t index) {
  check_predictor(cb, cfg, state);
  return advance(cb, cfg, state, index);
}

}  // namespace cqnv
