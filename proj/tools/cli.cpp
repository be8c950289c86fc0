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

#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cqnv/analysis.hpp"
#include "cqnv/bitstream.hpp"
#include "cqnv/decoder.hpp"
#include "cqnv/errors.hpp"
#include "cqnv/metrics.hpp"
#include "cqnv/quantizers.hpp"
#include "cqnv/synthesis.hpp"
#include "cqnv/synthetic_speech.hpp"
#include "cqnv/training.hpp"
#include "cqnv/wav.hpp"

namespace cqnv::cli {
namespace {

namespace fs = std::filesystem;

const std::map<std::string, CodecVersion> kVersionMap = {
    {"codec2-1200", CodecVersion::Codec2_1200},
    {"v1", CodecVersion::CqnvV1},
    {"v2", CodecVersion::CqnvV2},
    {"v3", CodecVersion::CqnvV3},
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f << text;
  if (!f) throw IoError("error writing " + path.string());
}

std::vector<std::vector<FrameParams>> analyze_corpus_dir(const fs::path& dir) {
  const auto corpus = load_corpus(dir);
  if (corpus.empty()) throw EmptyInputError("no .wav files in " + dir.string());
  std::vector<std::vector<FrameParams>> out;
  out.reserve(corpus.size());
  for (const auto& pcm : corpus) out.push_back(analyze_signal(pcm));
  return out;
}

QuantizerProfile load_profile(const fs::path& dir, CodecVersion v) {
  return QuantizerProfile(v, load_codebook_set(dir, v));
}

std::vector<double> read_codec_input(const fs::path& path) {
  const auto wav = read_wav(path);
  if (wav.sample_rate != kSampleRate || wav.channels != 1 || wav.bits_per_sample != 16) {
    throw InvalidArgument(path.string() + ": expected 8000 Hz mono 16-bit PCM, got " +
                          std::to_string(wav.sample_rate) + " Hz, " +
                          std::to_string(wav.channels) + " channel(s), " +
                          std::to_string(wav.bits_per_sample) + "-bit");
  }
  if (wav.samples.empty()) throw EmptyInputError(path.string() + ": no samples");
  return wav.samples;
}

std::vector<ConditioningFrame> decode_conditioning(const fs::path& stream_path,
                                                   const fs::path& codebooks) {
  const auto stream = load_stream(stream_path);
  const auto profile = load_profile(codebooks, stream.version);
  return assemble_conditioning(decode_frames(profile, stream.packets));
}

struct Options {
  std::string codebooks = "codebooks";
  std::uint64_t seed = 42;
  CodecVersion version = CodecVersion::CqnvV3;

  // train
  std::string corpus, out_dir, which = "all", log_path;
  std::size_t max_iterations = LbgOptions{}.max_iterations;

  // encode / decode / features
  std::string input, output;

  // eval
  CodecVersion profile_a = CodecVersion::CqnvV2, profile_b = CodecVersion::CqnvV3;
  std::string json_path;

  // synth-corpus
  std::size_t count = 100;
  double min_seconds = 1.5, max_seconds = 3.0;
};

int cmd_train(const Options& o, std::ostream& out) {
  const fs::path dir = o.out_dir;
  fs::create_directories(dir);
  const auto data = collect_training_data(analyze_corpus_dir(o.corpus));
  LbgOptions lbg;
  lbg.seed = o.seed;
  lbg.max_iterations = o.max_iterations;

  namespace f = codebook_files;
  std::string log = "# seed=" + std::to_string(o.seed) +
                    " lsp_vectors=" + std::to_string(data.lsp_count()) +
                    " pitch_energy_vectors=" + std::to_string(data.pitch_energy_count()) + "\n";
  CodebookSet set;
  auto record = [&](std::string_view name, const LbgResult& r) {
    log += "# " + std::string(name) + "\n" + format_training_log(r.log);
  };

  if (o.which == "all") {
    set = train_all_codebooks(data, lbg, &log);
  } else if (o.which == "lsp1") {
    auto r = train_lsp_stage1(data, lbg);
    record("lsp1", r);
    set.lsp_stage1 = r.codebook;
  } else if (o.which == "lsp_split") {
    const auto stage1 = load_codebook(dir / f::kLspStage1);
    auto fine = train_lsp_split(data, stage1, kLspResidualFineSize, lbg);
    record("lsp_odd_512", fine.odd);
    record("lsp_even_512", fine.even);
    auto coarse = train_lsp_split(data, stage1, kLspResidualCoarseSize, lbg);
    record("lsp_odd_128", coarse.odd);
    record("lsp_even_128", coarse.even);
    set.lsp_odd_fine = fine.odd.codebook;
    set.lsp_even_fine = fine.even.codebook;
    set.lsp_odd_coarse = coarse.odd.codebook;
    set.lsp_even_coarse = coarse.even.codebook;
  } else {
    auto fine = train_pitch_energy(data, kPitchEnergyFineSize, lbg);
    record("pe_256", fine);
    auto coarse = train_pitch_energy(data, kPitchEnergyCoarseSize, lbg);
    record("pe_64", coarse);
    set.pe_fine = fine.codebook;
    set.pe_coarse = coarse.codebook;
  }
  save_codebook_set(set, dir);
  const fs::path log_path = o.log_path.empty() ? dir / ("train_" + o.which + ".log")
                                               : fs::path(o.log_path);
  write_text(log_path, log);
  out << "trained " << o.which << " codebooks into " << dir.string() << "\n";
  return kExitOk;
}

int cmd_encode(const Options& o, std::ostream& out) {
  const auto pcm = read_codec_input(o.input);
  const auto profile = load_profile(o.codebooks, o.version);
  const auto stream = encode_pcm(profile, pcm);
  save_stream(stream, o.output);
  out << "packets=" << stream.packets.size() << " version=" << version_name(stream.version)
      << " bytes=" << container_size_bytes(stream.version, stream.packets.size()) << "\n";
  return kExitOk;
}

int cmd_decode(const Options& o, std::ostream& out) {
  const auto frames = decode_conditioning(o.input, o.codebooks);
  const auto pcm = synthesize_fallback(frames, o.seed);
  write_wav(o.output, pcm, kSampleRate);
  out << "frames=" << frames.size() << " samples=" << pcm.size() << "\n";
  return kExitOk;
}

int cmd_features(const Options& o, std::ostream& out) {
  const auto frames = decode_conditioning(o.input, o.codebooks);
  save_features(frames, o.output);
  out << "frames=" << frames.size() << " dim=" << kConditioningDim << "\n";
  return kExitOk;
}

int cmd_eval(const Options& o, std::ostream& out) {
  const auto corpus = analyze_corpus_dir(o.corpus);
  ProfileQuantizer qa(load_profile(o.codebooks, o.profile_a));
  ProfileQuantizer qb(load_profile(o.codebooks, o.profile_b));
  const auto ra = evaluate_quantizer(qa, corpus);
  const auto rb = evaluate_quantizer(qb, corpus);
  auto section = [&](CodecVersion v, const DistortionReport& r) {
    out << "[" << version_name(v) << "]\n" << r.to_text();
  };
  section(o.profile_a, ra);
  section(o.profile_b, rb);
  char diff[64];
  std::snprintf(diff, sizeof diff, "%.6f", rb.mean_sd_db - ra.mean_sd_db);
  out << "[diff]\nmean_sd_db=" << diff << "\n";
  if (!o.json_path.empty()) {
    std::string json = "{\n\"" + std::string(version_name(o.profile_a)) + "\": " + ra.to_json() +
                       ",\n\"" + std::string(version_name(o.profile_b)) + "\": " + rb.to_json() +
                       "\n}\n";
    write_text(o.json_path, json);
  }
  return kExitOk;
}

int cmd_synth_corpus(const Options& o, std::ostream& out) {
  if (!(o.min_seconds > 0.0) || o.max_seconds < o.min_seconds) {
    throw UsageError("--min-seconds must be positive and not exceed --max-seconds");
  }
  write_synthetic_corpus(o.out_dir, o.count, o.seed, o.min_seconds, o.max_seconds);
  out << "wrote " << o.count << " utterances to " << o.out_dir << "\n";
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"CQNV low-bitrate speech codec", "cqnv"};
  app.require_subcommand(1);
  Options o;

  auto add_codebooks = [&](CLI::App* c) {
    c->add_option("--codebooks", o.codebooks, "Codebook directory")->capture_default_str();
  };
  auto add_seed = [&](CLI::App* c) {
    c->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  };
  auto version_option = [&](CLI::App* c, const std::string& name, CodecVersion& target,
                            const std::string& help) {
    std::vector<std::string> names;
    for (const auto& [k, v] : kVersionMap) names.push_back(k);
    return c
        ->add_option_function<std::string>(
            name,
            [&target](const std::string& s) { target = kVersionMap.at(CLI::detail::to_lower(s)); },
            help)
        ->check(CLI::IsMember(names, CLI::ignore_case).description(""))
        ->type_name("{codec2-1200,v1,v2,v3}");
  };

  auto* train = app.add_subcommand("train", "Train codebooks with LBG");
  train->add_option("corpus", o.corpus, "Directory of 8 kHz mono PCM16 .wav files")->required();
  train->add_option("out_dir", o.out_dir, "Output codebook directory")->required();
  train->add_option("--which", o.which, "Which codebooks to train")
      ->check(CLI::IsMember({"lsp1", "lsp_split", "pitch_energy", "all"}))
      ->capture_default_str();
  train->add_option("--iterations", o.max_iterations, "Max Lloyd iterations per size")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  train->add_option("--log", o.log_path, "Training log path (default: OUT_DIR/train_WHICH.log)");
  add_seed(train);

  auto* encode = app.add_subcommand("encode", "Encode a WAV file into a CQNV stream");
  encode->add_option("input", o.input, "8 kHz mono PCM16 WAV")->required();
  encode->add_option("output", o.output, "Output .cqnv stream")->required();
  version_option(encode, "--version", o.version, "Codec version")->default_str("v3");
  add_codebooks(encode);

  auto* decode = app.add_subcommand("decode", "Decode a CQNV stream with the LPC fallback synthesizer");
  decode->add_option("input", o.input, "Input .cqnv stream")->required();
  decode->add_option("output", o.output, "Output 8 kHz WAV")->required();
  add_codebooks(decode);
  add_seed(decode);

  auto* features = app.add_subcommand("features", "Export 23-dim conditioning features (CQFT)");
  features->add_option("input", o.input, "Input .cqnv stream")->required();
  features->add_option("output", o.output, "Output .cqft file")->required();
  add_codebooks(features);

  auto* eval = app.add_subcommand("eval", "Compare the quantization distortion of two versions");
  version_option(eval, "profile_a", o.profile_a, "First codec version")->required();
  version_option(eval, "profile_b", o.profile_b, "Second codec version")->required();
  eval->add_option("corpus", o.corpus, "Directory of 8 kHz mono PCM16 .wav files")->required();
  eval->add_option("--json", o.json_path, "Also write both reports as JSON");
  add_codebooks(eval);

  auto* synth = app.add_subcommand("synth-corpus", "Write a synthetic speech-like corpus");
  synth->add_option("out_dir", o.out_dir, "Output directory")->required();
  synth->add_option("--count", o.count, "Number of utterances")->capture_default_str();
  synth->add_option("--min-seconds", o.min_seconds, "Shortest duration")->capture_default_str();
  synth->add_option("--max-seconds", o.max_seconds, "Longest duration")->capture_default_str();
  add_seed(synth);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const std::map<CLI::App*, std::function<int(const Options&, std::ostream&)>> handlers = {
      {train, cmd_train},       {encode, cmd_encode}, {decode, cmd_decode},
      {features, cmd_features}, {eval, cmd_eval},     {synth, cmd_synth_corpus},
  };
  try {
    for (const auto& [sub, handler] : handlers) {
      if (sub->parsed()) return handler(o, out);
    }
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
}

}  // namespace cqnv::cli
