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

#include "cqnv/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "byte_io.hpp"
#include "cqnv/errors.hpp"

namespace cqnv {

PacketAnchors dequantize_packet(const QuantizerProfile& profile, const Packet& packet,
                                PredictiveState& state) {
  PacketAnchors a;
  a.lsp = dequantize_lsp_packet(profile, packet.lsp);
  a.pitch_energy = dequantize_pitch_energy_packet(profile, packet.pitch_energy, state);
  a.voicing = packet.voicing;
  return a;
}

std::array<LspVector, 3> interpolate_lsp(const LspVector& prev, const LspVector& next) {
  std::array<LspVector, 3> out{};
  for (std::size_t j = 0; j < 3; ++j) {
    const double t = static_cast<double>(j + 1) / static_cast<double>(kFramesPerPacket);
    for (std::size_t i = 0; i < kLpcOrder; ++i) {
      out[j][i] = (1.0 - t) * prev[i] + t * next[i];
    }
  }
  return out;
}

PitchEnergyVector interpolate_pitch_energy(const PitchEnergyVector& prev,
                                           const PitchEnergyVector& next) {
  return {0.5 * (prev.x_p + next.x_p), 0.5 * (prev.x_e + next.x_e)};
}

LpcVector ConditioningFrame::lpc() const { return lsp_to_lpc(lsp); }

LpcVector ConditioningFrame::normalized_lpc() const {
  auto a = lpc();
  double peak = 1.0;
  for (double v : a) peak = std::max(peak, std::abs(v));
  for (double& v : a) v /= peak;
  return a;
}

std::array<float, kConditioningDim> ConditioningFrame::features() const {
  std::array<float, kConditioningDim> f{};
  for (std::size_t i = 0; i < kLpcOrder; ++i) f[i] = static_cast<float>(lsp[i]);
  f[10] = static_cast<float>(energy_db);
  f[11] = static_cast<float>(wo);
  f[12] = voiced ? 1.0f : 0.0f;
  const auto a = normalized_lpc();
  for (std::size_t i = 0; i < kLpcOrder; ++i) f[13 + i] = static_cast<float>(a[i]);
  return f;
}

StreamDecoder::StreamDecoder(QuantizerProfile profile) : profile_(std::move(profile)) {}

std::vector<DecodedFrame> StreamDecoder::emit(const PacketAnchors& cur,
                                              const PacketAnchors& next) const {
  std::vector<DecodedFrame> out(kFramesPerPacket);
  const auto lsps = interpolate_lsp(cur.lsp, next.lsp);
  out[0].lsp = cur.lsp;
  for (std::size_t j = 0; j < 3; ++j) out[j + 1].lsp = lsps[j];

  const auto& pe = cur.pitch_energy;
  out[0].pitch_energy = pe[0];
  out[1].pitch_energy = interpolate_pitch_energy(pe[0], pe[1]);
  out[2].pitch_energy = pe[1];
  out[3].pitch_energy = interpolate_pitch_energy(pe[1], next.pitch_energy[0]);

  for (std::size_t j = 0; j < kFramesPerPacket; ++j) out[j].voiced = cur.voicing[j];
  return out;
}

std::vector<DecodedFrame> StreamDecoder::push(const Packet& packet) {
  auto anchors = dequantize_packet(profile_, packet, state_);
  std::vector<DecodedFrame> out;
  if (pending_) out = emit(*pending_, anchors);
  pending_ = std::move(anchors);
  return out;
}

std::vector<DecodedFrame> StreamDecoder::flush() {
  if (!pending_) return {};
  // No successor: hold the final anchors.
  auto hold = *pending_;
  hold.pitch_energy[0] = hold.pitch_energy[1];
  auto out = emit(*pending_, hold);
  pending_.reset();
  return out;
}

std::vector<DecodedFrame> decode_frames(const QuantizerProfile& profile,
                                        std::span<const Packet> packets) {
  StreamDecoder dec(profile);
  std::vector<DecodedFrame> out;
  out.reserve(packets.size() * kFramesPerPacket);
  for (const auto& p : packets) {
    auto frames = dec.push(p);
    out.insert(out.end(), frames.begin(), frames.end());
  }
  auto tail = dec.flush();
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

std::vector<ConditioningFrame> assemble_conditioning(std::span<const DecodedFrame> frames) {
  std::vector<ConditioningFrame> out;
  out.reserve(frames.size());
  for (const auto& f : frames) {
    ConditioningFrame c;
    c.lsp = f.lsp;
    c.energy_db = f.pitch_energy.x_e;
    c.wo = inverse_transform_pitch(f.pitch_energy.x_p);
    c.voiced = f.voiced;
    out.push_back(c);
  }
  return out;
}

std::vector<FeatureRow> feature_rows(std::span<const ConditioningFrame> frames) {
  std::vector<FeatureRow> rows;
  rows.reserve(frames.size());
  for (const auto& f : frames) rows.push_back(f.features());
  return rows;
}

std::vector<std::uint8_t> serialize_features(std::span<const FeatureRow> rows) {
  if (rows.size() > 0xFFFFFFFFu) throw InvalidArgument("CQFT: too many frames");
  detail::ByteWriter w;
  w.bytes("CQFT");
  w.u32(static_cast<std::uint32_t>(rows.size()));
  w.u16(static_cast<std::uint16_t>(kConditioningDim));
  for (const auto& row : rows) {
    for (float v : row) w.f32(v);
  }
  return w.take();
}

std::vector<FeatureRow> parse_features(std::span<const std::uint8_t> bytes) {
  detail::ByteReader r(bytes, "CQFT");
  r.expect_magic("CQFT");
  const std::size_t count = r.u32();
  const std::size_t dim = r.u16();
  if (dim != kConditioningDim) {
    throw FormatError("CQFT: dimension " + std::to_string(dim) + ", expected " +
                      std::to_string(kConditioningDim));
  }
  if (r.remaining() != count * dim * 4) {
    throw FormatError("CQFT: payload length does not match frame count");
  }
  std::vector<FeatureRow> rows(count);
  for (auto& row : rows) {
    for (auto& v : row) v = r.f32();
  }
  return rows;
}

void save_features(std::span<const ConditioningFrame> frames,
                   const std::filesystem::path& path) {
  const auto rows = feature_rows(frames);
  detail::write_file(path, serialize_features(rows));
}

std::vector<FeatureRow> load_features(const std::filesystem::path& path) {
  return parse_features(detail::read_file(path));
}

}  // namespace cqnv
