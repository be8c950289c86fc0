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

// Minimal RIFF/WAVE I/O restricted to 16-bit PCM.

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace cqnv {

struct WavAudio {
  int sample_rate = 0;
  int channels = 0;
  int bits_per_sample = 0;
  std::vector<double> samples;  // interleaved, scaled to [-1, 1)
};

// Throws FormatError for anything other than PCM16 (any rate/channels are
// reported, callers validate them), IoError when the file cannot be read.
WavAudio read_wav(const std::filesystem::path& path);

// Writes mono PCM16; samples are clipped to [-1, 1].
void write_wav(const std::filesystem::path& path, std::span<const double> samples,
               int sample_rate);

std::vector<std::uint8_t> encode_wav(std::span<const double> samples, int sample_rate);
WavAudio decode_wav(std::span<const std::uint8_t> bytes);

// Reads every *.wav under `dir` (non-recursive, sorted by file name) and
// requires 8 kHz mono PCM16.
std::vector<std::vector<double>> load_corpus(const std::filesystem::path& dir);

}  // namespace cqnv
