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

// Codebook training data collection and the per-book training entry points.

#pragma once

#include <array>
#include <span>
#include <vector>

#include "cqnv/analysis.hpp"
#include "cqnv/lbg.hpp"
#include "cqnv/quantizers.hpp"

namespace cqnv {

struct TrainingData {
  std::vector<double> lsp;  // n x 10, every analysed frame
  // Open-loop prediction residuals at the pitch/energy sample points (every
  // second frame); the first point of each utterance is kept unpredicted.
  std::vector<double> pitch_energy_residual;  // m x 2
  std::vector<double> pitch_energy_weight;    // m, from DistortionWeights

  std::size_t lsp_count() const { return lsp.size() / kLpcOrder; }
  std::size_t pitch_energy_count() const { return pitch_energy_weight.size(); }
};

TrainingData collect_training_data(std::span<const std::vector<FrameParams>> utterances,
                                   const DistortionWeights& weights = {});

LbgResult train_lsp_stage1(const TrainingData& data, const LbgOptions& options = {},
                           std::size_t size = kLspStage1Size);

struct SplitTrainingResult {
  LbgResult odd;
  LbgResult even;
};

// Trains the odd/even residual books against an existing stage-1 book.
SplitTrainingResult train_lsp_split(const TrainingData& data, const Codebook& stage1,
                                    std::size_t size, const LbgOptions& options = {});

LbgResult train_pitch_energy(const TrainingData& data, std::size_t size,
                             const LbgOptions& options = {});

// Trains every book in CodebookSet; `log` (optional) receives one section
// per book.
CodebookSet train_all_codebooks(const TrainingData& data, const LbgOptions& options = {},
                                std::string* log = nullptr);

}  // namespace cqnv
