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

// Linear prediction analysis and LPC <-> LSP conversion.
//
// Conventions: the analysis filter is A(z) = 1 + sum_{i=1..p} a_i z^-i and the
// coefficient arrays below hold a_1..a_p (the leading 1 is implicit). LSP
// frequencies are in radians, strictly increasing inside (0, pi).

#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace cqnv {

inline constexpr std::size_t kLpcOrder = 10;
inline constexpr double kBandwidthExpansion = 0.994;

using LpcVector = std::array<double, kLpcOrder>;
using LspVector = std::array<double, kLpcOrder>;

struct LevinsonResult {
  std::vector<double> coeffs;            // a_1..a_order
  std::vector<double> reflection;        // k_1..k_order
  std::vector<double> prediction_error;  // E_0..E_order, E_0 = r[0]
};

// Levinson-Durbin recursion on autocorrelation lags r[0..order].
LevinsonResult levinson_durbin(std::span<const double> autocorr,
                               std::size_t order);

std::vector<double> autocorrelation(std::span<const double> x,
                                    std::size_t max_lag);

// Symmetric Hamming window of length n.
std::vector<double> hamming_window(std::size_t n);

struct LpcAnalysis {
  LpcVector coeffs{};
  bool silent = false;
  // Levinson prediction-error energies E_0..E_p before bandwidth expansion.
  std::vector<double> prediction_error;
};

// Windows `samples` with a Hamming window of the same length, runs the
// autocorrelation method and applies bandwidth expansion gamma^i. An all-zero
// buffer yields zero coefficients and `silent = true`.
LpcAnalysis lpc_analyze(std::span<const double> samples,
                        std::size_t order = kLpcOrder);

// Throws LspConversionError (tagged with frame_index when >= 0) if A(z) is not
// minimum phase and the root search fails.
LspVector lpc_to_lsp(const LpcVector& lpc, long frame_index = -1);

// Throws LspOrderError unless 0 < lsp[0] < ... < lsp[9] < pi.
LpcVector lsp_to_lpc(const LspVector& lsp);

bool lsp_is_ordered(std::span<const double> lsp);

// Convert reflection coefficients (|k| < 1) to direct-form a_1..a_p.
std::vector<double> reflection_to_lpc(std::span<const double> reflection);

// |A(e^jw)|^2 for the direct-form coefficients.
double lpc_power_response(std::span<const double> lpc, double w);

}  // namespace cqnv
