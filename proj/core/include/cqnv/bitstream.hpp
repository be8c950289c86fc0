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

// Packet bit packing (MSB first) and the CQNV stream container.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "cqnv/codec_version.hpp"

namespace cqnv {

// Quantizer indices for one 40 ms packet (four 10 ms frames).
struct Packet {
  std::array<std::uint32_t, 3> lsp{};  // stage 1, odd residual, even residual
  std::array<std::uint32_t, 2> pitch_energy{};  // sample points at frames 0, 2
  std::array<bool, kFramesPerPacket> voicing{};
  bool spare = false;

  bool operator==(const Packet&) const = default;
};

struct BitString {
  std::vector<std::uint8_t> bytes;  // MSB first, zero padded
  std::size_t bit_count = 0;

  bool bit(std::size_t i) const { return (bytes[i / 8] >> (7 - i % 8)) & 1u; }
  bool operator==(const BitString&) const = default;
};

class BitWriter {
 public:
  // Appends the low `width` bits of value, most significant first. Throws
  // OverflowError if value does not fit.
  void write(std::uint32_t value, unsigned width);
  void append(const BitString& bits);

  std::size_t bit_count() const { return bits_.bit_count; }
  const BitString& bits() const { return bits_; }
  BitString take() { return std::move(bits_); }

 private:
  BitString bits_;
};

class BitReader {
 public:
  BitReader(std::span<const std::uint8_t> bytes, std::size_t bit_count);
  explicit BitReader(const BitString& bits)
      : BitReader(bits.bytes, bits.bit_count) {}

  // Throws FormatError when fewer than `width` bits remain.
  std::uint32_t read(unsigned width);
  std::size_t remaining() const { return bit_count_ - pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t bit_count_;
  std::size_t pos_ = 0;
};

// Field order: LSP indices, pitch/energy indices, voicing frame 0..3, spare.
// Output is exactly packet_bits(v) long.
BitString pack(CodecVersion v, const Packet& packet);
void pack_into(CodecVersion v, const Packet& packet, BitWriter& out);

// Throws FormatError unless bits.bit_count == packet_bits(v).
Packet unpack(CodecVersion v, const BitString& bits);
Packet unpack_from(CodecVersion v, BitReader& in);

// CQNV container (little endian integers):
//   "CQNV" | u8 format=1 | u8 codec version id | u32 packet count |
//   packets bit-contiguous, zero padded to a byte | u32 CRC32
// The CRC covers every preceding byte.
inline constexpr std::uint8_t kContainerFormatVersion = 1;
inline constexpr std::size_t kContainerHeaderBytes = 10;
inline constexpr std::size_t kContainerTrailerBytes = 4;

struct EncodedStream {
  CodecVersion version = CodecVersion::CqnvV3;
  std::vector<Packet> packets;

  bool operator==(const EncodedStream&) const = default;
};

std::size_t container_size_bytes(CodecVersion v, std::size_t packet_count);

std::vector<std::uint8_t> write_container(const EncodedStream& stream);
EncodedStream read_container(std::span<const std::uint8_t> bytes);

void save_stream(const EncodedStream& stream, const std::filesystem::path& path);
EncodedStream load_stream(const std::filesystem::path& path);

}  // namespace cqnv
