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

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <numbers>
#include <random>

#include "cqnv/errors.hpp"
#include "cqnv/quantizers.hpp"
#include "cqnv/training.hpp"
#include "cqnv/transforms.hpp"
#include "test_support.hpp"

namespace cqnv {
namespace {

constexpr double kPi = std::numbers::pi;

double wo_hz(double f0) { return 2.0 * kPi * f0 / 8000.0; }

TEST(Transforms, PitchClosedForms) {
  EXPECT_NEAR(transform_pitch(wo_hz(50.0)), 0.0, 1e-12);
  EXPECT_NEAR(transform_pitch(wo_hz(100.0)), 1.0, 1e-12);
  EXPECT_NEAR(transform_pitch(wo_hz(400.0)), 3.0, 1e-12);
  EXPECT_NEAR(inverse_transform_pitch(0.0), kPi / 80.0, 1e-15);
  EXPECT_NEAR(inverse_transform_pitch(3.0) * 8000.0 / (2.0 * kPi), 400.0, 1e-9);
  EXPECT_THROW(transform_pitch(0.0), InvalidArgument);
  EXPECT_THROW(transform_pitch(-0.1), InvalidArgument);
}

TEST(Transforms, EnergyClosedForms) {
  EXPECT_NEAR(transform_energy(0.0), -40.0, 1e-12);
  EXPECT_NEAR(transform_energy(0.9999), 0.0, 1e-12);
  EXPECT_NEAR(transform_energy(99.9999), 20.0, 1e-12);
  EXPECT_EQ(inverse_transform_energy(-40.0), 0.0);
  EXPECT_NEAR(inverse_transform_energy(0.0), 0.9999, 1e-15);
  EXPECT_EQ(inverse_transform_energy(-60.0), 0.0);
  EXPECT_THROW(transform_energy(-1e-9), InvalidArgument);
}

TEST(Transforms, RoundTrips) {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> f0(50.0, 400.0), xp(-2.0, 5.0), e(1e-6, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const double w = wo_hz(f0(rng));
    EXPECT_NEAR(inverse_transform_pitch(transform_pitch(w)) / w, 1.0, 1e-12);
    const double x = xp(rng);
    EXPECT_NEAR(transform_pitch(inverse_transform_pitch(x)), x, 1e-12);
    const double en = e(rng);
    EXPECT_NEAR(inverse_transform_energy(transform_energy(en)), en, 1e-10);
  }
}

TEST(Profiles, MappingIsTotalAndExact) {
  EXPECT_EQ(version_from_bits(27, 16), CodecVersion::Codec2_1200);
  EXPECT_EQ(version_from_bits(23, 16), CodecVersion::CqnvV1);
  EXPECT_EQ(version_from_bits(27, 12), CodecVersion::CqnvV2);
  EXPECT_EQ(version_from_bits(23, 12), CodecVersion::CqnvV3);
  EXPECT_FALSE(version_from_bits(23, 14).has_value());
  for (auto v : kAllVersions) {
    const auto a = bit_allocation(v);
    EXPECT_EQ(version_from_bits(a.lsp_bits(), a.pitch_energy_bits()), v);
  }
}

TEST(Profiles, BitWidthsPerVersion) {
  const auto fine = bit_allocation(CodecVersion::Codec2_1200);
  EXPECT_EQ(fine.lsp, (std::array<unsigned, 3>{9, 9, 9}));
  EXPECT_EQ(fine.pitch_energy, (std::array<unsigned, 2>{8, 8}));
  const auto v3 = bit_allocation(CodecVersion::CqnvV3);
  EXPECT_EQ(v3.lsp, (std::array<unsigned, 3>{9, 7, 7}));
  EXPECT_EQ(v3.pitch_energy, (std::array<unsigned, 2>{6, 6}));
  EXPECT_EQ(v3.pitch_energy_bits(), 12u);
}

TEST(Profiles, BindsBooksByVersion) {
  const auto set = testing::random_codebook_set(1);
  const QuantizerProfile v3(CodecVersion::CqnvV3, set);
  EXPECT_EQ(v3.lsp_odd().size(), 128u);
  EXPECT_EQ(v3.pitch_energy().size(), 64u);
  const QuantizerProfile c2(CodecVersion::Codec2_1200, set);
  EXPECT_EQ(c2.lsp_even().size(), 512u);
  EXPECT_EQ(c2.pitch_energy().size(), 256u);
  EXPECT_EQ(c2.lsp_bits(), 27u);
  EXPECT_EQ(v3.lsp_bits(), 23u);
}

TEST(Profiles, RejectsMissingOrMisshapedBooks) {
  auto set = testing::random_codebook_set(1);
  set.pe_coarse = Codebook{};
  EXPECT_THROW(QuantizerProfile(CodecVersion::CqnvV3, set), InvalidArgument);
  EXPECT_NO_THROW(QuantizerProfile(CodecVersion::CqnvV1, set));
  set = testing::random_codebook_set(1);
  std::swap(set.lsp_odd_coarse, set.lsp_odd_fine);
  EXPECT_THROW(QuantizerProfile(CodecVersion::CqnvV3, set), InvalidArgument);
}

TEST(Profiles, CodebookSetFilesRoundTrip) {
  const auto set = testing::random_codebook_set(2);
  const auto dir = std::filesystem::temp_directory_path() / "cqnv_test_books";
  std::filesystem::remove_all(dir);
  save_codebook_set(set, dir);
  const auto all = load_codebook_set(dir);
  EXPECT_EQ(all.lsp_stage1, set.lsp_stage1);
  EXPECT_EQ(all.pe_fine, set.pe_fine);
  EXPECT_EQ(all.lsp_even_coarse, set.lsp_even_coarse);
  const auto v3 = load_codebook_set(dir, CodecVersion::CqnvV3);
  EXPECT_EQ(v3.lsp_odd_coarse, set.lsp_odd_coarse);
  EXPECT_EQ(v3.pe_fine.size(), 0u);
  std::filesystem::remove(dir / std::string(codebook_files::kPitchEnergyCoarse));
  EXPECT_THROW(load_codebook_set(dir, CodecVersion::CqnvV3), IoError);
  EXPECT_NO_THROW(load_codebook_set(dir, CodecVersion::Codec2_1200));
  std::filesystem::remove_all(dir);
}

TEST(LspQuantizer, IndicesFitDeclaredWidths) {
  const auto set = testing::random_codebook_set(3);
  std::mt19937_64 rng(4);
  for (auto v : kAllVersions) {
    const QuantizerProfile prof(v, set);
    const auto a = bit_allocation(v);
    for (int t = 0; t < 200; ++t) {
      const auto idx = quantize_lsp_packet(prof, testing::random_lsp(rng));
      for (std::size_t k = 0; k < 3; ++k) EXPECT_LT(idx[k], 1u << a.lsp[k]);
    }
  }
}

TEST(LspQuantizer, StageOneCodewordWithZeroResidualIsExact) {
  auto set = testing::random_codebook_set(5);
  auto zero_first = [](const Codebook& cb) {
    std::vector<float> v(cb.values().begin(), cb.values().end());
    std::fill(v.begin(), v.begin() + static_cast<long>(cb.dim()), 0.0f);
    return Codebook(cb.dim(), v);
  };
  set.lsp_odd_coarse = zero_first(set.lsp_odd_coarse);
  set.lsp_even_coarse = zero_first(set.lsp_even_coarse);
  const QuantizerProfile prof(CodecVersion::CqnvV3, set);
  // Random LSPs have 0.05 rad spacing, above the enforced minimum.
  LspVector x{};
  for (std::size_t i = 0; i < kLpcOrder; ++i) x[i] = set.lsp_stage1.entry(100)[i];
  const auto idx = quantize_lsp_packet(prof, x);
  EXPECT_EQ(idx, (LspIndices{100, 0, 0}));
  EXPECT_EQ(dequantize_lsp_packet(prof, idx), x);
}

TEST(LspQuantizer, RejectsUnorderedAnchor) {
  const QuantizerProfile prof(CodecVersion::CqnvV3, testing::random_codebook_set(1));
  auto lsp = flat_lsp();
  std::swap(lsp[0], lsp[1]);
  EXPECT_THROW(quantize_lsp_packet(prof, lsp), LspOrderError);
}

bool spaced(const LspVector& l) {
  const double gap = lsp_min_gap() * (1.0 - 1e-9);
  if (l[0] < gap || l[kLpcOrder - 1] > kPi - gap) return false;
  for (std::size_t i = 1; i < kLpcOrder; ++i) {
    if (l[i] - l[i - 1] < gap) return false;
  }
  return lsp_is_ordered(l);
}

TEST(LspQuantizer, DequantizedOrderedForEveryStageOneCodeword) {
  // Residual books wide enough to scramble the order before enforcement.
  auto set = testing::random_codebook_set(6);
  std::mt19937_64 rng(7);
  set.lsp_odd_coarse = testing::random_codebook(128, kSplitDim, rng, -0.4, 0.4);
  set.lsp_even_coarse = testing::random_codebook(128, kSplitDim, rng, -0.4, 0.4);
  const QuantizerProfile prof(CodecVersion::CqnvV3, set);
  std::uniform_int_distribution<std::uint32_t> r(0, 127);
  for (std::uint32_t i1 = 0; i1 < 512; ++i1) {
    for (int s = 0; s < 16; ++s) {
      const auto l = dequantize_lsp_packet(prof, {i1, r(rng), r(rng)});
      ASSERT_TRUE(spaced(l)) << "stage1 " << i1;
      ASSERT_NO_THROW(lsp_to_lpc(l));
    }
  }
}

TEST(LspStability, RepairsArbitraryVectors) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-0.5, kPi + 0.5);
  for (int t = 0; t < 5000; ++t) {
    LspVector l{};
    for (auto& v : l) v = u(rng);
    if (t % 7 == 0) l.fill(1.0);
    enforce_lsp_stability(l);
    ASSERT_TRUE(spaced(l)) << "trial " << t;
  }
}

TEST(LspStability, LeavesValidVectorsAlone) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 200; ++t) {
    const auto l = testing::random_lsp(rng, 0.06);
    auto m = l;
    enforce_lsp_stability(m);
    EXPECT_EQ(m, l);
  }
}

TEST(PitchEnergyQuantizer, IndicesFitAndConvergeOnConstantInput) {
  const auto set = testing::random_codebook_set(11);
  for (auto v : {CodecVersion::CqnvV3, CodecVersion::Codec2_1200}) {
    const QuantizerProfile prof(v, set);
    PredictiveState st;
    const PitchEnergyVector x{transform_pitch(wo_hz(120.0)), -15.0};
    double first = -1.0, last = 0.0;
    for (int t = 0; t < 50; ++t) {
      PitchEnergyPair rec{};
      const auto idx = quantize_pitch_energy_packet(prof, {x, x}, st, &rec);
      for (auto i : idx) EXPECT_LT(i, prof.pitch_energy().size());
      for (const auto& r : rec) {
        const double e = std::hypot(r.x_p - x.x_p, r.x_e - x.x_e);
        if (first < 0.0) first = e;
        last = e;
      }
    }
    EXPECT_LT(last, first) << version_name(v);
  }
}

TEST(PitchEnergyQuantizer, SearchWeightsPitchAboveEnergy) {
  // Plain Euclidean search would take row 0 (0.25 vs 9); the weighted
  // metric gives 225 vs 9.
  auto set = testing::random_codebook_set(12);
  std::vector<std::vector<double>> rows(64, {10.0, 100.0});
  rows[0] = {0.5, 0.0};
  rows[1] = {0.0, 3.0};
  set.pe_coarse = Codebook::from_rows(rows);
  const QuantizerProfile prof(CodecVersion::CqnvV3, set);
  PredictiveState st;
  const auto idx = quantize_pitch_energy_packet(prof, {PitchEnergyVector{}, PitchEnergyVector{}}, st);
  EXPECT_EQ(idx[0], 1u);
}

TEST(PitchEnergyTraining, WeightedBookResolvesPitchBetter) {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> p(0.3, 0.6), e(-2.7, 6.5);
  TrainingData data;
  for (int i = 0; i < 4000; ++i) {
    data.pitch_energy_residual.push_back(p(rng));
    data.pitch_energy_residual.push_back(e(rng));
    data.pitch_energy_weight.push_back(1.0);
  }
  const auto weighted = train_pitch_energy(data, 64).codebook;
  const auto plain = lbg_train(data.pitch_energy_residual, 2, 64, data.pitch_energy_weight).codebook;
  auto pitch_mse = [&](const Codebook& cb) {
    double s = 0.0;
    for (std::size_t i = 0; i < data.pitch_energy_count(); ++i) {
      const std::span<const double> x(&data.pitch_energy_residual[2 * i], 2);
      const auto k = nearest_code(cb, x, kPitchEnergyDimWeights).index;
      s += std::pow(x[0] - cb.entry(k)[0], 2);
    }
    return s / static_cast<double>(data.pitch_energy_count());
  };
  EXPECT_LT(pitch_mse(weighted), 0.25 * pitch_mse(plain));
}

TEST(PitchEnergyQuantizer, StateSyncOverTenThousandPackets) {
  const auto set = testing::random_codebook_set(12);
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> xp(0.0, 3.0), xe(-40.0, 0.0);
  for (auto v : kAllVersions) {
    const QuantizerProfile prof(v, set);
    PredictiveState enc, dec;
    for (int t = 0; t < 10000; ++t) {
      const PitchEnergyPair s{{{xp(rng), xe(rng)}, {xp(rng), xe(rng)}}};
      PitchEnergyPair local{};
      const auto idx = quantize_pitch_energy_packet(prof, s, enc, &local);
      const auto remote = dequantize_pitch_energy_packet(prof, idx, dec);
      ASSERT_EQ(local, remote) << "packet " << t;
      ASSERT_EQ(enc, dec);
    }
  }
}

TEST(PacketEncoder, SamplesFramesZeroAndTwo) {
  const QuantizerProfile prof(CodecVersion::CqnvV3, testing::random_codebook_set(14));
  std::array<FrameParams, 4> frames{};
  for (std::size_t i = 0; i < 4; ++i) {
    frames[i].lsp = flat_lsp();
    frames[i].wo = wo_hz(100.0 + 50.0 * static_cast<double>(i));
    frames[i].energy = 0.01 * static_cast<double>(i + 1);
    frames[i].voiced = i != 1;
  }
  PacketEncoder enc(prof);
  const auto p = enc.encode_packet(frames);

  PredictiveState ref;
  PitchEnergyPair rec{};
  const auto idx = quantize_pitch_energy_packet(
      prof, {pitch_energy_from_frame(frames[0]), pitch_energy_from_frame(frames[2])}, ref, &rec);
  EXPECT_EQ(p.packet.pitch_energy, idx);
  EXPECT_EQ(p.pitch_energy, rec);
  EXPECT_EQ(p.packet.lsp, quantize_lsp_packet(prof, flat_lsp()));
  EXPECT_EQ(p.packet.voicing, (std::array<bool, 4>{true, false, true, true}));
  EXPECT_FALSE(p.packet.spare);
}

TEST(PacketEncoder, OneSecondGivesTwentyFivePackets) {
  const QuantizerProfile prof(CodecVersion::CqnvV3, testing::random_codebook_set(15));
  const auto utt = synthesize_utterance(3, 1.0);
  ASSERT_EQ(utt.samples.size(), 8000u);
  const auto stream = encode_pcm(prof, utt.samples);
  EXPECT_EQ(stream.packets.size(), 25u);
  EXPECT_EQ(stream.version, CodecVersion::CqnvV3);
  const auto silent = encode_pcm(prof, std::vector<double>(8000, 0.0));
  EXPECT_EQ(silent.packets.size(), 25u);
}

TEST(PacketEncoder, PartialPacketRepeatsLastFrame) {
  const QuantizerProfile prof(CodecVersion::CqnvV1, testing::random_codebook_set(16));
  const auto frames = analyze_signal(synthesize_utterance(4, 0.07).samples);
  ASSERT_EQ(frames.size(), 7u);
  PacketEncoder a(prof);
  const auto packets = a.encode_frames(frames);
  ASSERT_EQ(packets.size(), 2u);
  PacketEncoder b(prof);
  const std::array<FrameParams, 4> g0{frames[0], frames[1], frames[2], frames[3]};
  const std::array<FrameParams, 4> g1{frames[4], frames[5], frames[6], frames[6]};
  EXPECT_EQ(b.encode_packet(g0).packet, packets[0].packet);
  EXPECT_EQ(b.encode_packet(g1).packet, packets[1].packet);
  EXPECT_THROW(a.encode_frames({}), EmptyInputError);
}

}  // namespace
}  // namespace cqnv
