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

#include "cqnv/wav.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "byte_io.hpp"
#include "cqnv/analysis.hpp"
#include "cqnv/errors.hpp"

namespace cqnv {

std::vector<std::uint8_t> encode_wav(std::span<const double> samples, int sample_rate) {
  const std::uint32_t data_bytes = static_cast<std::uint32_t>(samples.size() * 2);
  detail::ByteWriter w;
  w.bytes("RIFF");
  w.u32(36 + data_bytes);
  w.bytes("WAVE");
  w.bytes("fmt ");
  w.u32(16);
  w.u16(1);  // PCM
  w.u16(1);  // mono
  w.u32(static_cast<std::uint32_t>(sample_rate));
  w.u32(static_cast<std::uint32_t>(sample_rate * 2));
  w.u16(2);
  w.u16(16);
  w.bytes("data");
  w.u32(data_bytes);
  for (double s : samples) {
    const double scaled = std::round(std::clamp(s, -1.0, 1.0) * 32767.0);
    w.u16(static_cast<std::uint16_t>(static_cast<std::int16_t>(scaled)));
  }
  return w.take();
}

WavAudio decode_wav(std::span<const std::uint8_t> bytes) {
  detail::ByteReader r(bytes, "WAV");
  r.expect_magic("RIFF");
  r.u32();
  r.expect_magic("WAVE");
  WavAudio out;
  bool have_fmt = false;
  int format_tag = 0;
  while (r.remaining() >= 8) {
    const auto id = r.take(4);
    const std::uint32_t size = r.u32();
    const std::string tag(id.begin(), id.end());
    if (tag == "fmt ") {
      if (size < 16) throw FormatError("WAV: short fmt chunk");
      format_tag = r.u16();
      out.channels = r.u16();
      out.sample_rate = static_cast<int>(r.u32());
      r.u32();
      r.u16();
      out.bits_per_sample = r.u16();
      r.take(size - 16 + (size & 1));
      have_fmt = true;
    } else if (tag == "data") {
      if (!have_fmt) throw FormatError("WAV: data chunk before fmt chunk");
      if (format_tag != 1 || out.bits_per_sample != 16) {
        throw FormatError("WAV: only 16-bit PCM is supported (format " +
                          std::to_string(format_tag) + ", " +
                          std::to_string(out.bits_per_sample) + " bits)");
      }
      const std::size_t n = std::min<std::size_t>(size, r.remaining()) / 2;
      out.samples.resize(n);
      for (auto& s : out.samples) {
        s = static_cast<double>(static_cast<std::int16_t>(r.u16())) / 32768.0;
      }
      return out;
    } else {
      r.take(std::min<std::size_t>(size + (size & 1), r.remaining()));
    }
  }
  throw FormatError("WAV: no data chunk");
}

WavAudio read_wav(const std::filesystem::path& path) {
  const auto bytes = detail::read_file(path);
  try {
    return decode_wav(bytes);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_wav(const std::filesystem::path& path, std::span<const double> samples,
               int sample_rate) {
  detail::write_file(path, encode_wav(samples, sample_rate));
}

std::vector<std::vector<double>> load_corpus(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw IoError("corpus directory not found: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".wav") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<std::vector<double>> out;
  out.reserve(files.size());
  for (const auto& f : files) {
    auto wav = read_wav(f);
    if (wav.sample_rate != kSampleRate || wav.channels != 1) {
      throw FormatError(f.string() + ": expected 8000 Hz mono, got " +
                        std::to_string(wav.sample_rate) + " Hz, " +
                        std::to_string(wav.channels) + " channel(s)");
    }
    out.push_back(std::move(wav.samples));
  }
  return out;
}

}  // namespace cqnv
