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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 only if
// every criterion passes. Each criterion is checked at its stated tolerance
// and within its runtime budget.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cqnv/analysis.hpp"
#include "cqnv/bitstream.hpp"
#include "cqnv/decoder.hpp"
#include "cqnv/errors.hpp"
#include "cqnv/lbg.hpp"
#include "cqnv/metrics.hpp"
#include "cqnv/pitch.hpp"
#include "cqnv/quantizers.hpp"
#include "cqnv/synthesis.hpp"
#include "cqnv/synthetic_speech.hpp"
#include "cqnv/training.hpp"
#include "cqnv/transforms.hpp"

namespace {

using namespace cqnv;
using Clock = std::chrono::steady_clock;
constexpr double kPi = std::numbers::pi;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Collects failed checks for one criterion.
class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    ++count_;
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  void note(const std::string& s) { notes_ += (notes_.empty() ? "" : "; ") + s; }

  bool passed() const { return failed_ == 0; }
  std::string summary() const {
    std::ostringstream o;
    o << count_ - failed_ << "/" << count_ << " checks";
    if (!notes_.empty()) o << "; " << notes_;
    for (const auto& f : failures_) o << "\n      failed: " << f;
    return o.str();
  }

 private:
  std::size_t count_ = 0, failed_ = 0;
  std::vector<std::string> failures_;
  std::string notes_;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// ---------------------------------------------------------------------------
// Independent oracles.

// Field widths per version, written out longhand.
struct Widths {
  unsigned lsp[3];
  unsigned pe[2];
};
Widths expected_widths(CodecVersion v) {
  switch (v) {
    case CodecVersion::Codec2_1200: return {{9, 9, 9}, {8, 8}};
    case CodecVersion::CqnvV1: return {{9, 7, 7}, {8, 8}};
    case CodecVersion::CqnvV2: return {{9, 9, 9}, {6, 6}};
    case CodecVersion::CqnvV3: return {{9, 7, 7}, {6, 6}};
  }
  return {};
}

// MSB-first bit string of a packet, built as text.
std::string oracle_bits(CodecVersion v, const Packet& p) {
  const auto w = expected_widths(v);
  std::string s;
  auto put = [&](std::uint32_t value, unsigned width) {
    for (unsigned i = width; i-- > 0;) s.push_back(((value >> i) & 1u) ? '1' : '0');
  };
  for (int k = 0; k < 3; ++k) put(p.lsp[k], w.lsp[k]);
  for (int k = 0; k < 2; ++k) put(p.pitch_energy[k], w.pe[k]);
  for (bool b : p.voicing) put(b ? 1 : 0, 1);
  put(p.spare ? 1 : 0, 1);
  return s;
}

std::size_t oracle_nearest(const Codebook& cb, const std::vector<double>& x) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < cb.size(); ++k) {
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double e = x[i] - static_cast<double>(cb.values()[k * cb.dim() + i]);
      d += e * e;
    }
    if (d < best_d) {
      best_d = d;
      best = k;
    }
  }
  return best;
}

Packet random_packet(CodecVersion v, std::mt19937_64& rng, bool random_spare) {
  const auto w = expected_widths(v);
  Packet p;
  for (int k = 0; k < 3; ++k) p.lsp[k] = static_cast<std::uint32_t>(rng() >> (64 - w.lsp[k]));
  for (int k = 0; k < 2; ++k) p.pitch_energy[k] = static_cast<std::uint32_t>(rng() >> (64 - w.pe[k]));
  for (auto& b : p.voicing) b = rng() & 1u;
  p.spare = random_spare && (rng() & 1u);
  return p;
}

LpcVector random_stable_lpc(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> k(-1.0, 1.0);
  std::vector<double> refl(kLpcOrder);
  for (auto& v : refl) v = k(rng);
  const auto a = reflection_to_lpc(refl);
  LpcVector out{};
  std::copy(a.begin(), a.end(), out.begin());
  return out;
}

// ---------------------------------------------------------------------------
// Shared state: a codebook set trained on a synthetic corpus.

struct Context {
  std::vector<std::vector<FrameParams>> train_corpus;
  TrainingData data;
  CodebookSet books;
  std::vector<std::pair<std::string, LbgResult>> training_runs;
  double setup_seconds = 0.0;
};

constexpr std::size_t kTrainUtterances = 120;
constexpr std::size_t kHeldOutUtterances = 100;
constexpr double kUtteranceSeconds = 2.0;

void train(Context& ctx) {
  const auto t0 = Clock::now();
  for (std::size_t i = 0; i < kTrainUtterances; ++i) {
    ctx.train_corpus.push_back(analyze_signal(synthesize_utterance(1000 + i, kUtteranceSeconds).samples));
  }
  ctx.data = collect_training_data(ctx.train_corpus);
  const LbgOptions opt;  // seed 42, 100 iterations, 1e-5 tolerance

  auto s1 = train_lsp_stage1(ctx.data, opt);
  ctx.books.lsp_stage1 = s1.codebook;
  ctx.training_runs.emplace_back("lsp1", std::move(s1));
  auto fine = train_lsp_split(ctx.data, ctx.books.lsp_stage1, kLspResidualFineSize, opt);
  ctx.books.lsp_odd_fine = fine.odd.codebook;
  ctx.books.lsp_even_fine = fine.even.codebook;
  ctx.training_runs.emplace_back("lsp_odd_512", std::move(fine.odd));
  ctx.training_runs.emplace_back("lsp_even_512", std::move(fine.even));
  auto coarse = train_lsp_split(ctx.data, ctx.books.lsp_stage1, kLspResidualCoarseSize, opt);
  ctx.books.lsp_odd_coarse = coarse.odd.codebook;
  ctx.books.lsp_even_coarse = coarse.even.codebook;
  ctx.training_runs.emplace_back("lsp_odd_128", std::move(coarse.odd));
  ctx.training_runs.emplace_back("lsp_even_128", std::move(coarse.even));
  auto pe_fine = train_pitch_energy(ctx.data, kPitchEnergyFineSize, opt);
  ctx.books.pe_fine = pe_fine.codebook;
  ctx.training_runs.emplace_back("pe_256", std::move(pe_fine));
  auto pe_coarse = train_pitch_energy(ctx.data, kPitchEnergyCoarseSize, opt);
  ctx.books.pe_coarse = pe_coarse.codebook;
  ctx.training_runs.emplace_back("pe_64", std::move(pe_coarse));
  ctx.setup_seconds = seconds_since(t0);
}

// ---------------------------------------------------------------------------
// Criteria.

void bit_allocation(const Context& ctx, Checks& c) {
  const std::pair<CodecVersion, std::pair<unsigned, unsigned>> table[] = {
      {CodecVersion::Codec2_1200, {48, 1200}},
      {CodecVersion::CqnvV1, {44, 1100}},
      {CodecVersion::CqnvV2, {44, 1100}},
      {CodecVersion::CqnvV3, {40, 1000}},
  };
  std::mt19937_64 rng(1);
  const auto utt = synthesize_utterance(7, 3.0);
  for (const auto& [v, expect] : table) {
    const std::string name(version_name(v));
    c.expect(packet_bits(v) == expect.first, name + " packet bits");
    c.expect(bitrate(v) == expect.second, name + " bitrate");
    c.expect(static_cast<double>(expect.first) / 0.040 == static_cast<double>(expect.second),
             name + " bits / 40 ms");
    c.expect(pack(v, random_packet(v, rng, false)).bit_count == expect.first, name + " pack length");

    // A real encoded file: header + packets * bits, padded to a byte, + CRC.
    const auto stream = encode_pcm(QuantizerProfile(v, ctx.books), utt.samples);
    const auto bytes = write_container(stream);
    const std::size_t n = stream.packets.size();
    c.expect(n == 75, name + " 3 s -> 75 packets");
    const std::size_t payload_bits = n * expect.first;
    c.expect(bytes.size() == 10 + (payload_bits + 7) / 8 + 4, name + " file size");
    c.expect(bytes.size() * 8 - (10 + 4) * 8 - payload_bits < 8, name + " padding < 8 bits");
  }
  // One second at 1 kbps is exactly 1000 payload bits.
  const auto one = encode_pcm(QuantizerProfile(CodecVersion::CqnvV3, ctx.books),
                              std::span(utt.samples).first(8000));
  c.expect(write_container(one).size() == 10 + 125 + 4, "v3 1 s payload = 1000 bits");
  c.note("48/44/44/40 bits, 1200/1100/1100/1000 bit/s");
}

void round_trip(const Context&, Checks& c) {
  std::mt19937_64 rng(2);
  std::size_t oracle_mismatch = 0, roundtrip_mismatch = 0;
  for (auto v : kAllVersions) {
    EncodedStream s{v, {}};
    for (int t = 0; t < 10000; ++t) {
      const auto p = random_packet(v, rng, true);
      const auto bits = pack(v, p);
      const auto text = oracle_bits(v, p);
      bool same = text.size() == bits.bit_count;
      for (std::size_t i = 0; same && i < text.size(); ++i) same = bits.bit(i) == (text[i] == '1');
      oracle_mismatch += same ? 0 : 1;
      roundtrip_mismatch += unpack(v, bits) == p ? 0 : 1;
      s.packets.push_back(p);
    }
    const auto bytes = write_container(s);
    const auto back = read_container(bytes);
    c.expect(back == s, std::string(version_name(v)) + " container read == written");
    c.expect(write_container(back) == bytes, std::string(version_name(v)) + " rewrite byte-identical");

    std::size_t detected = 0, trials = 0;
    for (std::size_t pos = 0; pos < bytes.size(); pos += 97) {
      for (unsigned bit = 0; bit < 8; bit += 3) {
        auto bad = bytes;
        bad[pos] ^= static_cast<std::uint8_t>(1u << bit);
        ++trials;
        try {
          read_container(bad);
        } catch (const CrcError&) {
          ++detected;
        }
      }
    }
    c.expect(detected == trials, std::string(version_name(v)) + " CRC detects every flipped bit");
  }
  c.expect(roundtrip_mismatch == 0, "unpack(pack(p)) == p for 4 x 10000 packets");
  c.expect(oracle_mismatch == 0, "pack matches longhand MSB-first layout");
  c.note("40000 packets");
}

void vq_oracle(const Context& ctx, Checks& c) {
  const std::pair<const char*, const Codebook*> books[] = {
      {"lsp1 512x10", &ctx.books.lsp_stage1},       {"lsp_odd 512x5", &ctx.books.lsp_odd_fine},
      {"lsp_even 512x5", &ctx.books.lsp_even_fine}, {"lsp_odd 128x5", &ctx.books.lsp_odd_coarse},
      {"lsp_even 128x5", &ctx.books.lsp_even_coarse}, {"pe 256x2", &ctx.books.pe_fine},
      {"pe 64x2", &ctx.books.pe_coarse},
  };
  std::mt19937_64 rng(3);
  std::size_t total = 0;
  for (const auto& [name, cb] : books) {
    // Queries: codewords plus Gaussian jitter scaled to the book's spread.
    std::vector<double> lo(cb->dim(), 1e300), hi(cb->dim(), -1e300);
    for (std::size_t k = 0; k < cb->size(); ++k) {
      for (std::size_t i = 0; i < cb->dim(); ++i) {
        lo[i] = std::min(lo[i], static_cast<double>(cb->entry(k)[i]));
        hi[i] = std::max(hi[i], static_cast<double>(cb->entry(k)[i]));
      }
    }
    std::normal_distribution<double> g(0.0, 1.0);
    std::size_t mismatches = 0;
    for (int t = 0; t < 10000; ++t) {
      const auto& base = cb->entry(rng() % cb->size());
      std::vector<double> x(cb->dim());
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double spread = hi[i] - lo[i];
        x[i] = (t % 2 == 0) ? base[i] + 0.05 * spread * g(rng)
                            : lo[i] + spread * std::uniform_real_distribution<double>(-0.1, 1.1)(rng);
      }
      if (nearest_code(*cb, x).index != oracle_nearest(*cb, x)) ++mismatches;
    }
    total += 10000;
    c.expect(mismatches == 0, std::string(name) + ": " + std::to_string(mismatches) + " mismatches");
  }
  c.note(std::to_string(total) + " queries over 7 books");
}

void lbg_properties(const Context& ctx, Checks& c) {
  std::size_t iterations = 0;
  auto monotone = [&](const std::string& name, const LbgResult& r) {
    for (std::size_t i = 1; i < r.log.size(); ++i) {
      ++iterations;
      if (r.log[i].codebook_size != r.log[i - 1].codebook_size) continue;
      if (r.log[i].distortion > r.log[i - 1].distortion) {
        c.expect(false, name + " rises at log entry " + std::to_string(i));
        return;
      }
    }
    c.expect(true, name);
  };
  for (const auto& [name, r] : ctx.training_runs) monotone(name, r);

  std::mt19937_64 rng(4);
  std::normal_distribution<double> g(0.0, 1.0);
  for (std::size_t dim : {1u, 2u, 5u, 10u}) {
    std::vector<double> data(2000 * dim);
    for (auto& v : data) v = g(rng);
    monotone("gaussian dim " + std::to_string(dim), lbg_train(data, dim, 64));
  }

  for (std::size_t k : {2u, 16u, 64u, 128u}) {
    std::vector<double> data(k * 5);
    for (auto& v : data) v = static_cast<float>(g(rng));
    const auto r = lbg_train(data, 5, k);
    monotone("distinct K=" + std::to_string(k), r);
    c.expect(r.final_distortion == 0.0, "K=" + std::to_string(k) + " distinct points reach zero");
  }

  const std::vector<double> toy{0.0, 1.0, 0.0, 1.0, 1.0, 0.0};
  const auto r = lbg_train(toy, 1, 1);
  c.expect(r.codebook.entry(0)[0] == 0.5f, "{0,1} centroid 0.5");
  c.expect(std::abs(r.final_distortion - 0.25) <= 1e-9, "{0,1} distortion 0.25 +- 1e-9");
  c.note("toy distortion " + fmt("%.12f", r.final_distortion) + ", " +
         std::to_string(iterations) + " logged iterations checked");
}

void state_sync(const Context& ctx, Checks& c) {
  const auto cfg = PredictorConfig::pitch_energy();
  c.expect(cfg.coeff.size() == 2 && cfg.coeff[0] == 0.8 && cfg.coeff[1] == 0.9,
           "coefficients 0.8 / 0.9");
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> xp(0.0, 3.0), xe(-40.0, 0.0);
  for (auto v : kAllVersions) {
    const QuantizerProfile prof(v, ctx.books);
    PredictiveState enc, dec;
    std::size_t mismatches = 0;
    for (int t = 0; t < 10000; ++t) {
      // Mix of random jumps and slowly varying runs.
      const PitchEnergyPair s{{{xp(rng), xe(rng)}, {xp(rng), xe(rng)}}};
      PitchEnergyPair local{};
      Packet p;
      p.pitch_energy = quantize_pitch_energy_packet(prof, s, enc, &local);
      const auto wire = unpack(v, pack(v, p));
      const auto remote = dequantize_pitch_energy_packet(prof, wire.pitch_energy, dec);
      if (std::memcmp(&local, &remote, sizeof local) != 0) ++mismatches;
    }
    c.expect(mismatches == 0, std::string(version_name(v)) + ": " + std::to_string(mismatches) +
                                  " mismatching packets");
    c.expect(enc == dec, std::string(version_name(v)) + " final state equal");
  }
  c.note("10000 packets per version");
}

void transforms(const Context&, Checks& c) {
  auto wo = [](double f0) { return 2.0 * kPi * f0 / 8000.0; };
  const std::pair<double, double> pitch[] = {{50.0, 0.0}, {100.0, 1.0}, {400.0, 3.0}};
  for (const auto& [f0, x] : pitch) {
    c.expect(std::abs(transform_pitch(wo(f0)) - x) <= 1e-12, "F0 " + fmt("%.0f", f0));
  }
  c.expect(std::abs(transform_energy(0.0) + 40.0) <= 1e-12, "e=0 -> -40 dB");
  c.expect(std::abs(transform_energy(0.9999)) <= 1e-12, "e=0.9999 -> 0 dB");
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> f(50.0, 400.0), e(1e-6, 1.0), x(-1.0, 4.0);
  double worst = 0.0;
  for (int t = 0; t < 10000; ++t) {
    const double w = wo(f(rng));
    worst = std::max(worst, std::abs(inverse_transform_pitch(transform_pitch(w)) - w));
    const double en = e(rng);
    worst = std::max(worst, std::abs(inverse_transform_energy(transform_energy(en)) - en));
    const double xp = x(rng);
    worst = std::max(worst, std::abs(transform_pitch(inverse_transform_pitch(xp)) - xp));
  }
  c.expect(worst <= 1e-10, "round trips within 1e-10");
  c.note("worst round-trip error " + fmt("%.2e", worst));
}

void lsp_pipeline(const Context& ctx, Checks& c) {
  std::mt19937_64 rng(7);
  double worst = 0.0;
  std::size_t unordered = 0;
  for (int t = 0; t < 1000; ++t) {
    const auto a = random_stable_lpc(rng);
    const auto lsp = lpc_to_lsp(a);
    if (!lsp_is_ordered(lsp)) ++unordered;
    const auto back = lsp_to_lpc(lsp);
    for (std::size_t i = 0; i < kLpcOrder; ++i) worst = std::max(worst, std::abs(back[i] - a[i]));
  }
  c.expect(worst < 1e-4, "lpc<->lsp max abs error < 1e-4");
  c.expect(unordered == 0, "lpc_to_lsp output strictly increasing");

  std::size_t checked = 0, bad = 0;
  for (auto v : kAllVersions) {
    const QuantizerProfile prof(v, ctx.books);
    const auto w = expected_widths(v);
    // Every stage-1 codeword with sampled residual pairs, then interpolated
    // against the next codeword.
    LspVector prev{};
    for (std::uint32_t i1 = 0; i1 < 512; ++i1) {
      for (int s = 0; s < 8; ++s) {
        const LspIndices idx{i1, static_cast<std::uint32_t>(rng() >> (64 - w.lsp[1])),
                             static_cast<std::uint32_t>(rng() >> (64 - w.lsp[2]))};
        const auto l = dequantize_lsp_packet(prof, idx);
        ++checked;
        if (!lsp_is_ordered(l)) ++bad;
        if (i1 > 0 || s > 0) {
          for (const auto& f : interpolate_lsp(prev, l)) {
            ++checked;
            if (!lsp_is_ordered(f)) ++bad;
          }
        }
        prev = l;
      }
    }
    // Random packet streams through the full decoder.
    std::vector<Packet> packets;
    for (int i = 0; i < 1000; ++i) packets.push_back(random_packet(v, rng, false));
    for (const auto& f : decode_frames(prof, packets)) {
      ++checked;
      if (!lsp_is_ordered(f.lsp)) ++bad;
    }
  }
  c.expect(bad == 0, std::to_string(bad) + " of " + std::to_string(checked) +
                         " de-quantized/interpolated vectors out of order");
  c.note("round-trip max error " + fmt("%.2e", worst) + ", " + std::to_string(checked) +
         " de-quantized/interpolated vectors ordered");
}

// Largest gap between adjacent distinct x_p values a decoded sample can take
// from one codeword choice: the pitch resolution of the predictive book.
double pitch_step(const Codebook& cb) {
  std::set<float> xs;
  for (std::size_t k = 0; k < cb.size(); ++k) xs.insert(cb.entry(k)[0]);
  double step = 0.0;
  for (auto it = std::next(xs.begin()); it != xs.end(); ++it) {
    step = std::max(step, static_cast<double>(*it) - static_cast<double>(*std::prev(it)));
  }
  return step;
}

void end_to_end(const Context& ctx, Checks& c) {
  const double seconds = 10.0;
  const auto utt = synthesize_utterance(424242, seconds);
  const QuantizerProfile prof(CodecVersion::CqnvV3, ctx.books);

  const auto enc_frames = analyze_signal(utt.samples);
  const auto bytes = write_container(encode_pcm(prof, utt.samples));
  const auto stream = read_container(bytes);
  const auto frames = decode_frames(prof, stream.packets);
  const auto cond = assemble_conditioning(frames);
  const auto pcm = synthesize_fallback(cond);

  const long expected = static_cast<long>(utt.samples.size());
  const long got = static_cast<long>(pcm.size());
  c.expect(std::abs(got - expected) <= static_cast<long>(kFrameLength),
           "duration " + std::to_string(got) + " vs " + std::to_string(expected) + " samples");

  // Pitch of the synthesized audio against the encoder's wo, in stable voiced
  // regions: the encoder and decoder agree on voicing for the frame and its
  // two neighbours on each side.
  const auto out_frames = analyze_signal(pcm);
  const double step = pitch_step(prof.pitch_energy());
  std::size_t compared = 0, within = 0;
  for (std::size_t i = 2; i + 2 < std::min(enc_frames.size(), out_frames.size()); ++i) {
    bool stable = true;
    for (std::size_t k = i - 2; k <= i + 2; ++k) {
      stable = stable && enc_frames[k].voiced && frames[k].voiced;
    }
    if (!stable || !out_frames[i].voiced) continue;
    ++compared;
    const double d = std::abs(transform_pitch(out_frames[i].wo) - transform_pitch(enc_frames[i].wo));
    if (d <= step) ++within;
  }
  const double frac = compared ? static_cast<double>(within) / static_cast<double>(compared) : 0.0;
  c.expect(compared >= 100, "at least 100 stable voiced frames compared");
  c.expect(frac >= 0.95, "voiced pitch within one step in " + fmt("%.3f", frac) + " of frames");
  c.note("pitch step " + fmt("%.4f", step) + " octave, " + std::to_string(within) + "/" +
         std::to_string(compared) + " voiced frames within");

  // Coarse vs fine LSP path on a held-out corpus.
  std::vector<std::vector<FrameParams>> held_out;
  for (std::size_t i = 0; i < kHeldOutUtterances; ++i) {
    held_out.push_back(analyze_signal(synthesize_utterance(900000 + i, kUtteranceSeconds).samples));
  }
  const std::pair<CodecVersion, CodecVersion> pairs[] = {
      {CodecVersion::CqnvV3, CodecVersion::CqnvV2},
      {CodecVersion::CqnvV1, CodecVersion::Codec2_1200},
  };
  for (const auto& [coarse_v, fine_v] : pairs) {
    ProfileQuantizer coarse(QuantizerProfile(coarse_v, ctx.books));
    ProfileQuantizer fine(QuantizerProfile(fine_v, ctx.books));
    const auto rc = evaluate_quantizer(coarse, held_out);
    const auto rf = evaluate_quantizer(fine, held_out);
    const std::string label = std::string(version_name(coarse_v)) + " vs " +
                              std::string(version_name(fine_v));
    c.expect(rc.mean_sd_db >= rf.mean_sd_db, "mean SD " + label);
    c.note("SD " + label + ": " + fmt("%.3f", rc.mean_sd_db) + " >= " + fmt("%.3f", rf.mean_sd_db) +
           " dB over " + std::to_string(rc.lsp_frames) + " frames");
  }
}

struct Criterion {
  const char* name;
  double budget_seconds;
  bool includes_setup;
  void (*run)(const Context&, Checks&);
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"bit-allocation", 1.0, false, bit_allocation},
      {"round-trip-integrity", 10.0, false, round_trip},
      {"vq-oracle-equivalence", 10.0, false, vq_oracle},
      {"lbg-properties", 30.0, false, lbg_properties},
      {"predictive-state-sync", 10.0, false, state_sync},
      {"transform-correctness", 1.0, false, transforms},
      {"lsp-pipeline", 30.0, false, lsp_pipeline},
      {"end-to-end-desk-run", 300.0, true, end_to_end},
  };

  Context ctx;
  try {
    train(ctx);
  } catch (const std::exception& e) {
    std::printf("FAIL setup: %s\n", e.what());
    return 1;
  }
  std::printf("setup: trained 7 codebooks on %zu utterances (%zu LSP vectors) in %.1f s\n",
              ctx.train_corpus.size(), ctx.data.lsp_count(), ctx.setup_seconds);

  int failed = 0;
  for (const auto& cr : criteria) {
    Checks checks;
    const auto t0 = Clock::now();
    try {
      cr.run(ctx, checks);
    } catch (const std::exception& e) {
      checks.expect(false, std::string("exception: ") + e.what());
    }
    double elapsed = seconds_since(t0);
    if (cr.includes_setup) elapsed += ctx.setup_seconds;
    checks.expect(elapsed <= cr.budget_seconds,
                  "runtime " + fmt("%.2f", elapsed) + " s within " + fmt("%.0f", cr.budget_seconds) + " s");
    const bool ok = checks.passed();
    failed += ok ? 0 : 1;
    std::printf("%s %s (%.2f s): %s\n", ok ? "PASS" : "FAIL", cr.name, elapsed,
                checks.summary().c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed,
              std::size(criteria));
  return failed == 0 ? 0 : 1;
}
