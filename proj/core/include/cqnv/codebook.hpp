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

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace cqnv {

// Immutable table of code vectors stored as float32, row-major.
class Codebook {
 public:
  Codebook() = default;
  Codebook(std::size_t dim, std::vector<float> values);

  static Codebook from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return dim_ == 0 ? 0 : values_.size() / dim_; }
  // Index width: ceil(log2(size)).
  unsigned bits() const;

  std::span<const float> entry(std::size_t i) const {
    return {values_.data() + i * dim_, dim_};
  }
  std::span<const float> values() const { return values_; }

  bool operator==(const Codebook&) const = default;

 private:
  std::size_t dim_ = 0;
  std::vector<float> values_;
};

// CQVQ file format (little endian):
//   "CQVQ" | u8 version=1 | u16 dim | u32 size | size*dim float32 | u32 CRC32
// The CRC covers every byte that precedes it.
inline constexpr std::uint8_t kCodebookFormatVersion = 1;

std::vector<std::uint8_t> serialize_codebook(const Codebook& cb);
Codebook parse_codebook(std::span<const std::uint8_t> bytes);

void save_codebook(const Codebook& cb, const std::filesystem::path& path);
Codebook load_codebook(const std::filesystem::path& path);

}  // namespace cqnv
