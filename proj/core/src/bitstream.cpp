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

#include "cqnv/bitstream.hpp"

#include <string>

#include "byte_io.hpp"
#include "cqnv/errors.hpp"

namespace cqnv {

void BitWriter::write(std::uint32_t value, unsigned width) {
  if (width > 32) throw InvalidArgument("BitWriter: width > 32");
  if (width < 32 && (value >> width) != 0) {
    throw OverflowError("value " + std::to_string(value) + " does not fit in " +
                        std::to_string(width) + " bits");
  }
  for (unsigned i = width; i-- > 0;) {
    const std::size_t pos = bits_.bit_count++;
    if (pos % 8 == 0) bits_.bytes.push_back(0);
    if ((value >> i) & 1u) {
      bits_.bytes.back() |= static_cast<std::uint8_t>(0x80u >> (pos % 8));
    }
  }
}

void BitWriter::append(const BitString& bits) {
  for (std::size_t i = 0; i < bits.bit_count; ++i) write(bits.bit(i) ? 1 : 0, 1);
}

BitReader::BitReader(std::span<const std::uint8_t> bytes, std::size_t bit_count)
    : bytes_(bytes), bit_count_(bit_count) {
  if ((bit_count + 7) / 8 > bytes.size()) {
    throw FormatError("BitReader: bit count exceeds buffer");
  }
}

std::uint32_t BitReader::read(unsigned width) {
  if (width > 32) throw InvalidArgument("BitReader: width > 32");
  if (remaining() < width) throw FormatError("BitReader: out of bits");
  std::uint32_t v = 0;
  for (unsigned i = 0; i < width; ++i, ++pos_) {
    v = (v << 1) | ((bytes_[pos_ / 8] >> (7 - pos_ % 8)) & 1u);
  }
  return v;
}

void pack_into(CodecVersion v, const Packet& packet, BitWriter& out) {
  const auto alloc = bit_allocation(v);
  for (std::size_t i = 0; i < 3; ++i) out.write(packet.lsp[i], alloc.lsp[i]);
  for (std::size_t i = 0; i < 2; ++i) {
    out.write(packet.pitch_energy[i], alloc.pitch_energy[i]);
  }
  for (bool b : packet.voicing) out.write(b ? 1 : 0, 1);
  out.write(packet.spare ? 1 : 0, alloc.spare);
}

BitString pack(CodecVersion v, const Packet& packet) {
  BitWriter w;
  pack_into(v, packet, w);
  return w.take();
}

Packet unpack_from(CodecVersion v, BitReader& in) {
  const auto alloc = bit_allocation(v);
  Packet p;
  for (std::size_t i = 0; i < 3; ++i) p.lsp[i] = in.read(alloc.lsp[i]);
  for (std::size_t i = 0; i < 2; ++i) p.pitch_energy[i] = in.read(alloc.pitch_energy[i]);
  for (auto& b : p.voicing) b = in.read(1) != 0;
  p.spare = in.read(alloc.spare) != 0;
  return p;
}

Packet unpack(CodecVersion v, const BitString& bits) {
  if (bits.bit_count != packet_bits(v)) {
    throw FormatError("unpack: expected " + std::to_string(packet_bits(v)) +
                      " bits, got " + std::to_string(bits.bit_count));
  }
  BitReader r(bits);
  return unpack_from(v, r);
}

std::size_t container_size_bytes(CodecVersion v, std::size_t packet_count) {
  return kContainerHeaderBytes + (packet_count * packet_bits(v) + 7) / 8 +
         kContainerTrailerBytes;
}

std::vector<std::uint8_t> write_container(const EncodedStream& stream) {
  if (stream.packets.size() > 0xFFFFFFFFu) {
    throw InvalidArgument("write_container: too many packets");
  }
  detail::ByteWriter w;
  w.bytes("CQNV");
  w.u8(kContainerFormatVersion);
  w.u8(static_cast<std::uint8_t>(stream.version));
  w.u32(static_cast<std::uint32_t>(stream.packets.size()));
  BitWriter bits;
  for (const auto& p : stream.packets) pack_into(stream.version, p, bits);
  w.bytes(bits.bits().bytes);
  w.u32(detail::crc32(w.buffer()));
  return w.take();
}

EncodedStream read_container(std::span<const std::uint8_t> bytes) {
  const auto body = detail::check_trailing_crc(bytes, "CQNV");
  detail::ByteReader r(body, "CQNV");
  r.expect_magic("CQNV");
  const auto format = r.u8();
  if (format != kContainerFormatVersion) {
    throw FormatError("CQNV: unsupported format version " + std::to_string(format));
  }
  const auto id = r.u8();
  const auto version = version_from_id(id);
  if (!version) throw FormatError("CQNV: unknown codec version id " + std::to_string(id));
  const std::size_t count = r.u32();
  const std::size_t payload_bits = count * packet_bits(*version);
  if (r.remaining() != (payload_bits + 7) / 8) {
    throw FormatError("CQNV: payload length does not match packet count");
  }
  EncodedStream out;
  out.version = *version;
  out.packets.reserve(count);
  BitReader bits(r.take(r.remaining()), payload_bits);
  for (std::size_t i = 0; i < count; ++i) out.packets.push_back(unpack_from(*version, bits));
  return out;
}

void save_stream(const EncodedStream& stream, const std::filesystem::path& path) {
  detail::write_file(path, write_container(stream));
}

EncodedStream load_stream(const std::filesystem::path& path) {
  return read_container(detail::read_file(path));
}

}  // namespace cqnv
