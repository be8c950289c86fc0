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

// Codec versions and their per-packet bit allocation.
//
//                 LSP  pitch+energy  voicing  spare  total  bit/s
//   codec2-1200    27       16          4       1      48    1200
//   v1             23       16          4       1      44    1100
//   v2             27       12          4       1      44    1100
//   v3             23       12          4       1      40    1000

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace cqnv {

enum class CodecVersion : std::uint8_t {
  Codec2_1200 = 0,
  CqnvV1 = 1,
  CqnvV2 = 2,
  CqnvV3 = 3,
};

inline constexpr std::array<CodecVersion, 4> kAllVersions = {
    CodecVersion::Codec2_1200, CodecVersion::CqnvV1, CodecVersion::CqnvV2,
    CodecVersion::CqnvV3};

inline constexpr std::size_t kFramesPerPacket = 4;
inline constexpr double kPacketSeconds = 0.040;
inline constexpr unsigned kVoicingBits = 4;
inline constexpr unsigned kSpareBits = 1;

struct BitAllocation {
  std::array<unsigned, 3> lsp;  // stage 1, odd residual, even residual
  std::array<unsigned, 2> pitch_energy;
  unsigned voicing = kVoicingBits;
  unsigned spare = kSpareBits;

  unsigned lsp_bits() const { return lsp[0] + lsp[1] + lsp[2]; }
  unsigned pitch_energy_bits() const { return pitch_energy[0] + pitch_energy[1]; }
  unsigned total() const { return lsp_bits() + pitch_energy_bits() + voicing + spare; }
};

BitAllocation bit_allocation(CodecVersion v);
unsigned packet_bits(CodecVersion v);
// packet_bits / 40 ms
unsigned bitrate(CodecVersion v);

// Coarse (23-bit) LSP path: 9+7+7; fine: 9+9+9.
bool uses_coarse_lsp(CodecVersion v);
// Coarse (12-bit) pitch/energy path: 6+6; fine: 8+8.
bool uses_coarse_pitch_energy(CodecVersion v);

// Inverse of the (lsp_bits, pe_bits) profile mapping; nullopt for pairs
// outside {(27,16), (23,16), (27,12), (23,12)}.
std::optional<CodecVersion> version_from_bits(unsigned lsp_bits, unsigned pe_bits);

// "codec2-1200", "v1", "v2", "v3"
std::string_view version_name(CodecVersion v);
std::optional<CodecVersion> parse_version(std::string_view name);
std::optional<CodecVersion> version_from_id(std::uint8_t id);

}  // namespace cqnv
