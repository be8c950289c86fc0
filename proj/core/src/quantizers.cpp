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

#include "cqnv/quantizers.hpp"

#include <algorithm>
#include <numbers>
#include <string>

#include "cqnv/errors.hpp"

namespace cqnv {
namespace {

void require_shape(const Codebook& cb, std::size_t size, std::size_t dim,
                   std::string_view name) {
  if (cb.size() != size || cb.dim() != dim) {
    throw InvalidArgument("codebook " + std::string(name) + " must be " +
                          std::to_string(size) + "x" + std::to_string(dim) +
                          ", got " + std::to_string(cb.size()) + "x" +
                          std::to_string(cb.dim()));
  }
}

void maybe_load(Codebook& cb, const std::filesystem::path& dir,
                std::string_view name, bool required) {
  const auto path = dir / name;
  if (!required && !std::filesystem::exists(path)) return;
  cb = load_codebook(path);
}

}  // namespace

CodebookSet load_codebook_set(const std::filesystem::path& dir, CodecVersion v) {
  namespace f = codebook_files;
  CodebookSet set;
  const bool coarse_lsp = uses_coarse_lsp(v);
  const bool coarse_pe = uses_coarse_pitch_energy(v);
  maybe_load(set.lsp_stage1, dir, f::kLspStage1, true);
  if (coarse_lsp) {
    maybe_load(set.lsp_odd_coarse, dir, f::kLspOddCoarse, true);
    maybe_load(set.lsp_even_coarse, dir, f::kLspEvenCoarse, true);
  } else {
    maybe_load(set.lsp_odd_fine, dir, f::kLspOddFine, true);
    maybe_load(set.lsp_even_fine, dir, f::kLspEvenFine, true);
  }
  if (coarse_pe) {
    maybe_load(set.pe_coarse, dir, f::kPitchEnergyCoarse, true);
  } else {
    maybe_load(set.pe_fine, dir, f::kPitchEnergyFine, true);
  }
  return set;
}

CodebookSet load_codebook_set(const std::filesystem::path& dir) {
  namespace f = codebook_files;
  CodebookSet set;
  maybe_load(set.lsp_stage1, dir, f::kLspStage1, false);
  maybe_load(set.lsp_odd_fine, dir, f::kLspOddFine, false);
  maybe_load(set.lsp_even_fine, dir, f::kLspEvenFine, false);
  maybe_load(set.lsp_odd_coarse, dir, f::kLspOddCoarse, false);
  maybe_load(set.lsp_even_coarse, dir, f::kLspEvenCoarse, false);
  maybe_load(set.pe_fine, dir, f::kPitchEnergyFine, false);
  maybe_load(set.pe_coarse, dir, f::kPitchEnergyCoarse, false);
  return set;
}

void save_codebook_set(const CodebookSet& set, const std::filesystem::path& dir) {
  namespace f = codebook_files;
  std::filesystem::create_directories(dir);
  const std::pair<const Codebook*, std::string_view> books[] = {
      {&set.lsp_stage1, f::kLspStage1},         {&set.lsp_odd_fine, f::kLspOddFine},
      {&set.lsp_even_fine, f::kLspEvenFine},    {&set.lsp_odd_coarse, f::kLspOddCoarse},
      {&set.lsp_even_coarse, f::kLspEvenCoarse}, {&set.pe_fine, f::kPitchEnergyFine},
      {&set.pe_coarse, f::kPitchEnergyCoarse},
  };
  for (const auto& [cb, name] : books) {
    if (cb->size() > 0) save_codebook(*cb, dir / name);
  }
}

QuantizerProfile::QuantizerProfile(CodecVersion version, const CodebookSet& set)
    : version_(version), predictor_(PredictorConfig::pitch_energy()) {
  const auto alloc = bit_allocation(version);
  const bool coarse_lsp = uses_coarse_lsp(version);
  stage1_ = set.lsp_stage1;
  odd_ = coarse_lsp ? set.lsp_odd_coarse : set.lsp_odd_fine;
  even_ = coarse_lsp ? set.lsp_even_coarse : set.lsp_even_fine;
  pe_ = uses_coarse_pitch_energy(version) ? set.pe_coarse : set.pe_fine;

  require_shape(stage1_, std::size_t{1} << alloc.lsp[0], kLpcOrder, "lsp stage 1");
  require_shape(odd_, std::size_t{1} << alloc.lsp[1], kSplitDim, "lsp odd residual");
  require_shape(even_, std::size_t{1} << alloc.lsp[2], kSplitDim, "lsp even residual");
  require_shape(pe_, std::size_t{1} << alloc.pitch_energy[0], kPitchEnergyDim,
                "pitch/energy");
}

double lsp_min_gap() {
  return 2.0 * std::numbers::pi * 50.0 / static_cast<double>(kSampleRate);
}

void enforce_lsp_stability(LspVector& lsp) {
  const double gap = lsp_min_gap();
  const double upper = std::numbers::pi - gap;
  std::sort(lsp.begin(), lsp.end());
  for (int pass = 0; pass < 16; ++pass) {
    bool moved = false;
    for (std::size_t i = 1; i < lsp.size(); ++i) {
      const double d = lsp[i] - lsp[i - 1];
      if (d < gap) {
        const double push = 0.5 * (gap - d);
        lsp[i - 1] -= push;
        lsp[i] += push;
        moved = true;
      }
    }
    lsp.front() = std::max(lsp.front(), gap);
    lsp.back() = std::min(lsp.back(), upper);
    if (!moved) break;
  }
  // The symmetric passes may leave residual violations near the band edges.
  lsp.front() = std::max(lsp.front(), gap);
  for (std::size_t i = 1; i < lsp.size(); ++i) {
    lsp[i] = std::max(lsp[i], lsp[i - 1] + gap);
  }
  if (lsp.back() > upper) {
    lsp.back() = upper;
    for (std::size_t i = lsp.size() - 1; i-- > 0;) {
      lsp[i] = std::min(lsp[i], lsp[i + 1] - gap);
    }
  }
}

LspIndices quantize_lsp_packet(const QuantizerProfile& profile,
                               const LspVector& anchor) {
  if (!lsp_is_ordered(anchor)) {
    throw LspOrderError("quantize_lsp_packet: anchor LSPs are not strictly increasing");
  }
  const auto q = quantize_two_stage_split(profile.lsp_stage1(), profile.lsp_odd(),
                                          profile.lsp_even(), anchor);
  return {static_cast<std::uint32_t>(q.stage1), static_cast<std::uint32_t>(q.odd),
          static_cast<std::uint32_t>(q.even)};
}

LspVector dequantize_lsp_packet(const QuantizerProfile& profile,
                                const LspIndices& indices) {
  auto lsp = reconstruct_two_stage_split(profile.lsp_stage1(), profile.lsp_odd(),
                                         profile.lsp_even(), indices[0], indices[1],
                                         indices[2]);
  enforce_lsp_stability(lsp);
  return lsp;
}

PitchEnergyVector pitch_energy_from_frame(const FrameParams& frame) {
  return {transform_pitch(frame.wo), transform_energy(frame.energy)};
}

PitchEnergyIndices quantize_pitch_energy_packet(const QuantizerProfile& profile,
                                                const PitchEnergyPair& samples,
                                                PredictiveState& state,
                                                PitchEnergyPair* reconstruction) {
  PitchEnergyIndices idx{};
  for (std::size_t k = 0; k < 2; ++k) {
    const std::array<double, 2> x{samples[k].x_p, samples[k].x_e};
    const auto r = predictive_quantize(profile.pitch_energy(), profile.predictor(),
                                       state, x, kPitchEnergyDimWeights);
    idx[k] = static_cast<std::uint32_t>(r.index);
    if (reconstruction) (*reconstruction)[k] = {r.reconstruction[0], r.reconstruction[1]};
  }
  return idx;
}

PitchEnergyPair dequantize_pitch_energy_packet(const QuantizerProfile& profile,
                                               const PitchEnergyIndices& indices,
                                               PredictiveState& state) {
  PitchEnergyPair out{};
  for (std::size_t k = 0; k < 2; ++k) {
    const auto r = predictive_dequantize(profile.pitch_energy(), profile.predictor(),
                                         state, indices[k]);
    out[k] = {r[0], r[1]};
  }
  return out;
}

PacketEncoder::PacketEncoder(QuantizerProfile profile) : profile_(std::move(profile)) {}

EncodedPacket PacketEncoder::encode_packet(
    std::span<const FrameParams, kFramesPerPacket> frames) {
  EncodedPacket out;
  const auto lsp_idx = quantize_lsp_packet(profile_, frames[0].lsp);
  out.packet.lsp = lsp_idx;
  out.lsp_anchor = dequantize_lsp_packet(profile_, lsp_idx);

  const PitchEnergyPair samples{pitch_energy_from_frame(frames[0]),
                                pitch_energy_from_frame(frames[2])};
  out.packet.pitch_energy =
      quantize_pitch_energy_packet(profile_, samples, state_, &out.pitch_energy);

  for (std::size_t i = 0; i < kFramesPerPacket; ++i) {
    out.packet.voicing[i] = frames[i].voiced;
  }
  out.packet.spare = false;
  return out;
}

std::vector<EncodedPacket> PacketEncoder::encode_frames(std::span<const FrameParams> frames) {
  if (frames.empty()) throw EmptyInputError("encode_frames: no frames");
  std::vector<EncodedPacket> out;
  out.reserve((frames.size() + kFramesPerPacket - 1) / kFramesPerPacket);
  std::array<FrameParams, kFramesPerPacket> group;
  for (std::size_t start = 0; start < frames.size(); start += kFramesPerPacket) {
    for (std::size_t i = 0; i < kFramesPerPacket; ++i) {
      group[i] = frames[std::min(start + i, frames.size() - 1)];
    }
    out.push_back(encode_packet(group));
  }
  return out;
}

EncodedStream encode_pcm(const QuantizerProfile& profile, std::span<const double> pcm) {
  const auto frames = analyze_signal(pcm);
  PacketEncoder encoder(profile);
  EncodedStream stream;
  stream.version = profile.version();
  for (auto& p : encoder.encode_frames(frames)) stream.packets.push_back(p.packet);
  return stream;
}

}  // namespace cqnv
