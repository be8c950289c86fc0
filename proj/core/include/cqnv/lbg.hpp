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

// LBG codebook training: binary splitting from the global centroid followed
// by Lloyd iterations at each size.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cqnv/codebook.hpp"

namespace cqnv {

enum class FrameClass { StationaryVoiced, Voiced, Unvoiced };

// Per-training-vector distortion weights keyed by frame class.
struct DistortionWeights {
  double stationary_voiced = 4.0;
  double voiced = 2.0;
  double unvoiced = 1.0;

  double weight(FrameClass c) const;
};

// Stationary voiced: voiced now and at the previous sample point, with a
// relative pitch change below 5%.
FrameClass classify_stationarity(bool voiced, double wo, bool prev_voiced,
                                 double prev_wo);

struct LbgOptions {
  std::uint64_t seed = 42;
  std::size_t max_iterations = 100;  // Lloyd iterations per codebook size
  double relative_tolerance = 1e-5;
  double split_epsilon = 0.01;  // perturbation, in per-dimension std units
};

struct LbgIteration {
  std::size_t codebook_size = 0;
  std::size_t iteration = 0;  // within this size
  double distortion = 0.0;    // weighted mean squared error per vector
  std::size_t empty_cells_fixed = 0;
};

struct LbgResult {
  Codebook codebook;
  std::vector<LbgIteration> log;
  double final_distortion = 0.0;  // of the float32 codebook on the data
};

// `data` holds n vectors of length `dim`, row-major. `weights` is empty or
// holds one positive weight per vector. target_size must be a power of two
// not larger than n.
LbgResult lbg_train(std::span<const double> data, std::size_t dim,
                    std::size_t target_size,
                    std::span<const double> weights = {},
                    const LbgOptions& options = {});

std::string format_training_log(const std::vector<LbgIteration>& log);

}  // namespace cqnv
