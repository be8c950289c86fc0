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

#include "cqnv/codec_version.hpp"

#include <cmath>

namespace cqnv {

BitAllocation bit_allocation(CodecVersion v) {
  BitAllocation a;
  a.lsp = uses_coarse_lsp(v) ? std::array<unsigned, 3>{9, 7, 7}
                             : std::array<unsigned, 3>{9, 9, 9};
  a.pitch_energy = uses_coarse_pitch_energy(v) ? std::array<unsigned, 2>{6, 6}
                                               : std::array<unsigned, 2>{8, 8};
  return a;
}

unsigned packet_bits(CodecVersion v) { return bit_allocation(v).total(); }

unsigned bitrate(CodecVersion v) {
  return static_cast<unsigned>(std::lround(packet_bits(v) / kPacketSeconds));
}

bool uses_coarse_lsp(CodecVersion v) {
  return v == CodecVersion::CqnvV1 || v == CodecVersion::CqnvV3;
}

bool uses_coarse_pitch_energy(CodecVersion v) {
  return v == CodecVersion::CqnvV2 || v == CodecVersion::CqnvV3;
}

std::optional<CodecVersion> version_from_bits(unsigned lsp_bits, unsigned pe_bits) {
  for (auto v : kAllVersions) {
    const auto a = bit_allocation(v);
    if (a.lsp_bits() == lsp_bits && a.pitch_energy_bits() == pe_bits) return v;
  }
  return std::nullopt;
}

std::string_view version_name(CodecVersion v) {
  switch (v) {
    case CodecVersion::Codec2_1200: return "codec2-1200";
    case CodecVersion::CqnvV1: return "v1";
    case CodecVersion::CqnvV2: return "v2";
    case CodecVersion::CqnvV3: return "v3";
  }
  return "unknown";
}

std::optional<CodecVersion> parse_version(std::string_view name) {
  for (auto v : kAllVersions) {
    if (version_name(v) == name) return v;
  }
  return std::nullopt;
}

std::optional<CodecVersion> version_from_id(std::uint8_t id) {
  if (id > static_cast<std::uint8_t>(CodecVersion::CqnvV3)) return std::nullopt;
  return static_cast<CodecVersion>(id);
}

}  // namespace cqnv
