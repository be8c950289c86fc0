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

#include "cqnv/codebook.hpp"

#include <bit>
#include <limits>
#include <string>

#include "byte_io.hpp"
#include "cqnv/errors.hpp"

namespace cqnv {

Codebook::Codebook(std::size_t dim, std::vector<float> values)
    : dim_(dim), values_(std::move(values)) {
  if (dim_ == 0) throw InvalidArgument("Codebook: dimension must be positive");
  if (values_.empty() || values_.size() % dim_ != 0) {
    throw InvalidArgument("Codebook: value count " + std::to_string(values_.size()) +
                          " is not a positive multiple of dim " + std::to_string(dim_));
  }
}

Codebook Codebook::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw EmptyInputError("Codebook::from_rows: no rows");
  const std::size_t dim = rows.front().size();
  std::vector<float> values;
  values.reserve(rows.size() * dim);
  for (const auto& r : rows) {
    if (r.size() != dim) throw DimensionError("Codebook::from_rows", dim, r.size());
    for (double v : r) values.push_back(static_cast<float>(v));
  }
  return Codebook(dim, std::move(values));
}

unsigned Codebook::bits() const {
  const std::size_t n = size();
  if (n <= 1) return 0;
  return static_cast<unsigned>(std::bit_width(n - 1));
}

std::vector<std::uint8_t> serialize_codebook(const Codebook& cb) {
  if (cb.dim() > std::numeric_limits<std::uint16_t>::max() ||
      cb.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw InvalidArgument("serialize_codebook: codebook too large for CQVQ");
  }
  detail::ByteWriter w;
  w.bytes("CQVQ");
  w.u8(kCodebookFormatVersion);
  w.u16(static_cast<std::uint16_t>(cb.dim()));
  w.u32(static_cast<std::uint32_t>(cb.size()));
  for (float v : cb.values()) w.f32(v);
  w.u32(detail::crc32(w.buffer()));
  return w.take();
}

Codebook parse_codebook(std::span<const std::uint8_t> bytes) {
  const auto body = detail::check_trailing_crc(bytes, "CQVQ");
  detail::ByteReader r(body, "CQVQ");
  r.expect_magic("CQVQ");
  const auto version = r.u8();
  if (version != kCodebookFormatVersion) {
    throw FormatError("CQVQ: unsupported version " + std::to_string(version));
  }
  const std::size_t dim = r.u16();
  const std::size_t size = r.u32();
  if (dim == 0 || size == 0) throw FormatError("CQVQ: empty codebook");
  if (r.remaining() != dim * size * 4) {
    throw FormatError("CQVQ: payload length does not match dim*size");
  }
  std::vector<float> values(dim * size);
  for (auto& v : values) v = r.f32();
  return Codebook(dim, std::move(values));
}

void save_codebook(const Codebook& cb, const std::filesystem::path& path) {
  detail::write_file(path, serialize_codebook(cb));
}

Codebook load_codebook(const std::filesystem::path& path) {
  const auto bytes = detail::read_file(path);
  try {
    return parse_codebook(bytes);
  } catch (const FormatError& e) {
    // Re-throw with the path attached, preserving the CRC subtype.
    if (dynamic_cast<const CrcError*>(&e)) throw CrcError(path.string() + ": " + e.what());
    throw FormatError(path.string() + ": " + e.what());
  }
}

}  // namespace cqnv
