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

// Packet quantizers: the LSP two-stage split VQ and the joint predictive
// pitch/energy VQ, in their fine (Codec2 1200-style) and coarse bit modes,
// plus the packet encoder that drives them.

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include "cqnv/analysis.hpp"
#include "cqnv/bitstream.hpp"
#include "cqnv/codebook.hpp"
#include "cqnv/codec_version.hpp"
#include "cqnv/transforms.hpp"
#include "cqnv/vq.hpp"

namespace cqnv {

inline constexpr std::size_t kLspStage1Size = 512;
inline constexpr std::size_t kLspResidualFineSize = 512;
inline constexpr std::size_t kLspResidualCoarseSize = 128;
inline constexpr std::size_t kPitchEnergyFineSize = 256;
inline constexpr std::size_t kPitchEnergyCoarseSize = 64;
inline constexpr std::size_t kPitchEnergyDim = 2;

// Every codebook any version may need. Books a version does not use may be
// left empty (size 0).
struct CodebookSet {
  Codebook lsp_stage1;       // 512 x 10, shared by all versions
  Codebook lsp_odd_fine;     // 512 x 5
  Codebook lsp_even_fine;    // 512 x 5
  Codebook lsp_odd_coarse;   // 128 x 5
  Codebook lsp_even_coarse;  // 128 x 5
  Codebook pe_fine;          // 256 x 2
  Codebook pe_coarse;        // 64 x 2
};

namespace codebook_files {
inline constexpr std::string_view kLspStage1 = "lsp1.cqvq";
inline constexpr std::string_view kLspOddFine = "lsp_odd_512.cqvq";
inline constexpr std::string_view kLspEvenFine = "lsp_even_512.cqvq";
inline constexpr std::string_view kLspOddCoarse = "lsp_odd_128.cqvq";
inline constexpr std::string_view kLspEvenCoarse = "lsp_even_128.cqvq";
inline constexpr std::string_view kPitchEnergyFine = "pe_256.cqvq";
inline constexpr std::string_view kPitchEnergyCoarse = "pe_64.cqvq";
}  // namespace codebook_files

// Loads the books `v` needs from `dir`; other members stay empty.
CodebookSet load_codebook_set(const std::filesystem::path& dir, CodecVersion v);
// Loads every book present in `dir`.
CodebookSet load_codebook_set(const std::filesystem::path& dir);
// Writes each non-empty book under its canonical file name.
void save_codebook_set(const CodebookSet& set, const std::filesystem::path& dir);

using LspIndices = std::array<std::uint32_t, 3>;
using PitchEnergyIndices = std::array<std::uint32_t, 2>;
using PitchEnergyPair = std::array<PitchEnergyVector, 2>;

// Per-dimension weights of the pitch/energy search and training metric.
// A pitch error counts 30x an energy error (1 octave vs 1 dB), squared.
inline constexpr std::array<double, 2> kPitchEnergyDimWeights = {900.0, 1.0};

// Codebooks bound to one bit allocation.
class QuantizerProfile {
 public:
  // Throws InvalidArgument if a required book is missing or has the wrong
  // shape for the version's bit widths.
  QuantizerProfile(CodecVersion version, const CodebookSet& set);

  CodecVersion version() const { return version_; }
  unsigned lsp_bits() const { return bit_allocation(version_).lsp_bits(); }
  unsigned pitch_energy_bits() const {
    return bit_allocation(version_).pitch_energy_bits();
  }

  const Codebook& lsp_stage1() const { return stage1_; }
  const Codebook& lsp_odd() const { return odd_; }
  const Codebook& lsp_even() const { return even_; }
  const Codebook& pitch_energy() const { return pe_; }
  const PredictorConfig& predictor() const { return predictor_; }

 private:
  CodecVersion version_;
  Codebook stage1_, odd_, even_, pe_;
  PredictorConfig predictor_;
};

// Minimum LSP spacing after de-quantization: 50 Hz at 8 kHz, in radians.
double lsp_min_gap();

// Sorts, then pushes neighbours closer than lsp_min_gap() apart
// symmetrically and keeps the vector inside [gap, pi - gap].
void enforce_lsp_stability(LspVector& lsp);

// Throws LspOrderError if `anchor` is not strictly increasing in (0, pi).
LspIndices quantize_lsp_packet(const QuantizerProfile& profile,
                               const LspVector& anchor);
LspVector dequantize_lsp_packet(const QuantizerProfile& profile,
                                const LspIndices& indices);

PitchEnergyVector pitch_energy_from_frame(const FrameParams& frame);

// Quantizes the two sample points in order, advancing `state` once per
// point. `reconstruction`, when non-null, receives the encoder-local values.
PitchEnergyIndices quantize_pitch_energy_packet(const QuantizerProfile& profile,
                                                const PitchEnergyPair& samples,
                                                PredictiveState& state,
                                                PitchEnergyPair* reconstruction = nullptr);
PitchEnergyPair dequantize_pitch_energy_packet(const QuantizerProfile& profile,
                                               const PitchEnergyIndices& indices,
                                               PredictiveState& state);

// Encoder-side view of one packet: the indices and what the decoder will
// reconstruct from them.
struct EncodedPacket {
  Packet packet;
  LspVector lsp_anchor{};
  PitchEnergyPair pitch_energy{};
};

// Groups frames into 4-frame packets. LSPs are taken from frame 0 of each
// packet and pitch/energy from frames 0 and 2. One encoder per stream.
class PacketEncoder {
 public:
  explicit PacketEncoder(QuantizerProfile profile);

  EncodedPacket encode_packet(std::span<const FrameParams, kFramesPerPacket> frames);

  // A trailing partial packet is padded by repeating the last frame.
  std::vector<EncodedPacket> encode_frames(std::span<const FrameParams> frames);

  void reset() { state_ = {}; }
  const QuantizerProfile& profile() const { return profile_; }
  const PredictiveState& state() const { return state_; }

 private:
  QuantizerProfile profile_;
  PredictiveState state_;
};

// PCM at 8 kHz -> container-ready stream.
EncodedStream encode_pcm(const QuantizerProfile& profile,
                         std::span<const double> pcm);

}  // namespace cqnv
