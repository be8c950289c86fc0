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

// Packet de-quantization, interpolation back to 100 frames/s, and assembly
// of the 23-dimension vocoder conditioning features.

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "cqnv/bitstream.hpp"
#include "cqnv/quantizers.hpp"

namespace cqnv {

inline constexpr std::size_t kConditioningDim = 23;

// What one packet carries after de-quantization.
struct PacketAnchors {
  LspVector lsp{};            // frame 0
  PitchEnergyPair pitch_energy{};  // frames 0 and 2
  std::array<bool, kFramesPerPacket> voicing{};

  bool operator==(const PacketAnchors&) const = default;
};

PacketAnchors dequantize_packet(const QuantizerProfile& profile, const Packet& packet,
                                PredictiveState& state);

// Frames 1..3 between two anchors, at fractions 1/4, 2/4, 3/4.
std::array<LspVector, 3> interpolate_lsp(const LspVector& prev, const LspVector& next);

// Midpoint in the (log2 pitch, dB energy) domain.
PitchEnergyVector interpolate_pitch_energy(const PitchEnergyVector& prev,
                                           const PitchEnergyVector& next);

// De-quantized parameters of one 10 ms frame.
struct DecodedFrame {
  LspVector lsp{};
  PitchEnergyVector pitch_energy{};
  bool voiced = false;
};

// Per-frame vocoder input. Layout of features():
//   [0..9] LSPs, [10] energy (dB), [11] pitch wo (rad/sample),
//   [12] voicing 0/1, [13..22] normalized LPCs.
// The LPCs are always recomputed from the LSPs.
struct ConditioningFrame {
  LspVector lsp{};
  double energy_db = 0.0;
  double wo = 0.0;
  bool voiced = false;

  LpcVector lpc() const;
  // lpc() scaled by 1 / max(1, max_i |a_i|).
  LpcVector normalized_lpc() const;
  std::array<float, kConditioningDim> features() const;
};

// Streaming decoder. Interpolating frames 1..3 of a packet needs the next
// packet's anchors, so push() returns the frames of the previous packet and
// flush() emits the last packet by holding its anchors.
class StreamDecoder {
 public:
  explicit StreamDecoder(QuantizerProfile profile);

  std::vector<DecodedFrame> push(const Packet& packet);
  std::vector<DecodedFrame> flush();

  const PredictiveState& state() const { return state_; }
  // Anchors of the most recently pushed packet.
  const std::optional<PacketAnchors>& last_anchors() const { return pending_; }

 private:
  std::vector<DecodedFrame> emit(const PacketAnchors& cur, const PacketAnchors& next) const;

  QuantizerProfile profile_;
  PredictiveState state_;
  std::optional<PacketAnchors> pending_;
};

std::vector<DecodedFrame> decode_frames(const QuantizerProfile& profile,
                                        std::span<const Packet> packets);

std::vector<ConditioningFrame> assemble_conditioning(std::span<const DecodedFrame> frames);

// CQFT feature file (little endian):
//   "CQFT" | u32 frame count | u16 dim=23 | count*23 float32, row-major
using FeatureRow = std::array<float, kConditioningDim>;

std::vector<std::uint8_t> serialize_features(std::span<const FeatureRow> rows);
std::vector<FeatureRow> parse_features(std::span<const std::uint8_t> bytes);
std::vector<FeatureRow> feature_rows(std::span<const ConditioningFrame> frames);

void save_features(std::span<const ConditioningFrame> frames,
                   const std::filesystem::path& path);
std::vector<FeatureRow> load_features(const std::filesystem::path& path);

}  // namespace cqnv
