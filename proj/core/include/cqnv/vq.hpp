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

// Vector-quantizer search: plain nearest neighbour, two-stage split VQ, and
// leaky predictive VQ with encoder/decoder-synchronised state.

#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "cqnv/codebook.hpp"
#include "cqnv/lpc.hpp"

namespace cqnv {

struct NearestResult {
  std::size_t index = 0;
  double distortion = 0.0;
};

// Minimises sum_i w_i (x_i - c_i)^2; empty `weights` means all ones. Ties go
// to the lowest index. Throws DimensionError on length mismatch.
NearestResult nearest_code(const Codebook& cb, std::span<const double> x,
                           std::span<const double> weights = {});

double weighted_sq_error(std::span<const float> code, std::span<const double> x,
                         std::span<const double> weights = {});

// --- two-stage split VQ ----------------------------------------------------
//
// Stage 1 quantizes the 10-dim vector; the residual is split into the
// odd-order components (1st, 3rd, ... i.e. indices 0,2,4,6,8) and the
// even-order components (indices 1,3,5,7,9), each quantized by its own
// 5-dim book.

inline constexpr std::size_t kSplitDim = kLpcOrder / 2;

struct TwoStageSplitResult {
  std::size_t stage1 = 0;
  std::size_t odd = 0;
  std::size_t even = 0;
  LspVector reconstruction{};
};

TwoStageSplitResult quantize_two_stage_split(const Codebook& stage1,
                                             const Codebook& odd,
                                             const Codebook& even,
                                             const LspVector& x);

LspVector reconstruct_two_stage_split(const Codebook& stage1,
                                      const Codebook& odd,
                                      const Codebook& even, std::size_t i1,
                                      std::size_t i_odd, std::size_t i_even);

// Residual halves: `odd` receives x[0], x[2], ...; `even` x[1], x[3], ...
void split_odd_even(const LspVector& x, std::span<double, kSplitDim> odd,
                    std::span<double, kSplitDim> even);

// --- predictive VQ ---------------------------------------------------------

struct PredictorConfig {
  std::vector<double> coeff;  // per dimension, each in [0, 1)

  // 0.8 on the log-pitch dimension, 0.9 on the dB-energy dimension.
  static PredictorConfig pitch_energy();
};

struct PredictiveState {
  std::vector<double> prev_decoded;
  bool initialized = false;

  bool operator==(const PredictiveState&) const = default;
};

struct PredictiveResult {
  std::size_t index = 0;
  std::vector<double> reconstruction;
};

// Prediction p = coeff * prev_decoded (zero before the first vector). The
// residual x - p is quantized with nearest_code and the state advances to
// p + cb[index] through the same path predictive_dequantize uses.
PredictiveResult predictive_quantize(const Codebook& cb,
                                     const PredictorConfig& cfg,
                                     PredictiveState& state,
                                     std::span<const double> x,
                                     std::span<const double> weights = {});

std::vector<double> predictive_dequantize(const Codebook& cb,
                                          const PredictorConfig& cfg,
                                          PredictiveState& state,
                                          std::size_t index);

}  // namespace cqnv
