// Copyright 2026 The frame_courier Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: encode, decode, simulate, bench.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "frame_courier/frame_courier.hpp"
#include "frame_courier/report_json.hpp"

namespace fc = frame_courier;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIncomplete = 2;
constexpr int kExitIo = 3;

struct Options {
  fc::CodecSpec spec;
  std::string fps = "5";
  fc::ChannelConfig channel;
  std::string record_fps = "60";
  bool blur = false;
  std::string input;
  std::string output;
  std::string report;
  std::string sizes = "4096,65536,524288";
  std::uint64_t bench_seed = 1;
  bool bench_channel = false;
  int verbosity = 0;
};

fc::Rational parse_rate(const std::string& text) {
  const auto slash = text.find_first_of("/:");
  try {
    fc::Rational r{static_cast<std::uint32_t>(std::stoul(text.substr(0, slash))), 1};
    if (slash != std::string::npos) r.den = static_cast<std::uint32_t>(std::stoul(text.substr(slash + 1)));
    if (r.num == 0 || r.den == 0) throw std::invalid_argument("zero");
    return r;
  } catch (const std::logic_error&) {
    throw fc::codec_error(fc::errc::invalid_spec, "bad rate '" + text + "' (use N or N/D)");
  }
}

std::vector<std::uint64_t> parse_sizes(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoull(item));
    } catch (const std::logic_error&) {
      throw fc::codec_error(fc::errc::invalid_spec, "bad size '" + item + "'");
    }
  }
  if (out.empty()) throw fc::codec_error(fc::errc::invalid_spec, "empty --sizes list");
  return out;
}

void add_spec_flags(CLI::App& cmd, Options& o) {
  cmd.add_option("--data-rows", o.spec.data_rows, "data grid rows (cells)")->capture_default_str();
  cmd.add_option("--data-cols", o.spec.data_cols, "data grid columns (cells)")->capture_default_str();
  cmd.add_option("--scale", o.spec.block_scale, "pixels per cell side")->capture_default_str();
  cmd.add_option("--inner-wall", o.spec.inner_wall, "white wall thickness (cells)")->capture_default_str();
  cmd.add_option("--outer-wall", o.spec.outer_wall, "black wall thickness (cells)")->capture_default_str();
  cmd.add_option("--fps", o.fps, "playback frame rate, N or N/D")->capture_default_str();
  cmd.add_option("--body-repeat", o.spec.body_repeat, "copies of the whole frame list")->capture_default_str();
  cmd.add_option("--head-repeat", o.spec.head_repeat, "extra copies of the first frame")->capture_default_str();
  cmd.add_option("--pool-inset", o.spec.pool_inset, "pixels trimmed per block side when sampling")
      ->capture_default_str();
}

void add_channel_flags(CLI::App& cmd, Options& o) {
  cmd.add_option("--record-fps", o.record_fps, "recorder frame rate, N or N/D")->capture_default_str();
  cmd.add_option("--drop", o.channel.drop_probability, "per-frame drop probability")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd.add_option("--noise", o.channel.noise_amplitude, "uniform noise amplitude")
      ->check(CLI::Range(0, 255))
      ->capture_default_str();
  cmd.add_flag("--blur", o.blur, "apply a 3x3 box blur");
  cmd.add_option("--shift-x", o.channel.shift_x, "horizontal shift (px)")->capture_default_str();
  cmd.add_option("--shift-y", o.channel.shift_y, "vertical shift (px)")->capture_default_str();
  cmd.add_option("--margin", o.channel.canvas_margin, "desktop margin per side (px)")->capture_default_str();
  cmd.add_flag("--textured", o.channel.textured_canvas, "fill the margin with a desktop-like texture");
  cmd.add_option("--gain", o.channel.luma_gain, "luma gain")->capture_default_str();
  cmd.add_option("--seed", o.channel.seed, "channel seed")->capture_default_str();
}

void finalize(Options& o) {
  o.spec.fps = parse_rate(o.fps);
  o.spec.validate();
  o.channel.record_fps = parse_rate(o.record_fps);
  o.channel.blur = o.blur ? fc::BlurKind::box3 : fc::BlurKind::none;
  o.channel.validate();
}

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw fc::codec_error(fc::errc::io_failure, "cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool needs_transcode(const std::string& path) {
  auto ext = fs::path(path).extension().string();
  for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return ext == ".mp4" || ext == ".mov" || ext == ".mkv" || ext == ".avi";
}

void print_transcode_help(const std::string& path) {
  std::cerr << path << " is a compressed video; this tool reads and writes YUV4MPEG2 (.y4m) only.\n"
            << "Convert it first, e.g.:\n"
            << "  ffmpeg -i recorded.mov -vf format=gray recorded.y4m\n"
            << "and to publish an encoded stream as MP4:\n"
            << "  ffmpeg -i out.y4m -pix_fmt yuv420p out.mp4\n";
}

int run_encode(const Options& o) {
  const auto payload = read_file(o.input);
  const auto containers = fc::encode_containers(payload, o.spec);
  const auto seq = fc::schedule_frames(containers, o.spec);
  const auto bytes = fc::write_y4m_file(seq, o.output);
  std::cout << "unique frames:    " << containers.size() << "\n"
            << "scheduled frames: " << seq.frames.size() << "\n"
            << "duration (s):     " << seq.duration_seconds() << "\n"
            << "video bytes:      " << bytes << "\n";
  return kExitOk;
}

void write_report(const Options& o, const fc::DecodeReport& report) {
  if (o.verbosity > 0 || !report.success()) std::cerr << fc::report_to_text(report);
  if (o.report.empty()) return;
  fc::write_file_atomically(o.report, [&](std::ostream& out) { out << fc::report_to_json(report).dump(2) << "\n"; });
}

int run_decode(const Options& o) {
  std::ifstream in(o.input, std::ios::binary);
  if (!in) throw fc::codec_error(fc::errc::io_failure, "cannot open " + o.input);
  fc::Y4mReader reader(in);
  fc::Decoder decoder(o.spec);
  try {
    while (auto frame = reader.next()) decoder.feed(*frame);
  } catch (const fc::codec_error& e) {
    if (e.code() != fc::errc::truncated_frame) throw;
    std::cerr << "warning: " << e.what() << "; decoding the complete frames\n";
  }
  try {
    const auto result = decoder.finish();
    fc::write_file_atomically(o.output, [&](std::ostream& out) {
      out.write(reinterpret_cast<const char*>(result.bytes.data()), static_cast<std::streamsize>(result.bytes.size()));
    });
    write_report(o, result.report);
    if (o.verbosity > 0) std::cerr << "recovered " << result.bytes.size() << " bytes into " << o.output << "\n";
    return kExitOk;
  } catch (const fc::recovery_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    write_report(o, e.report());
    return kExitIncomplete;
  }
}

int run_simulate(const Options& o) {
  fc::FrameSequence seq;
  try {
    seq = fc::read_y4m_file(o.input);
  } catch (const fc::truncated_frame_error& e) {
    std::cerr << "warning: " << e.what() << "\n";
    seq = e.partial();
  }
  const auto out = fc::apply_channel(seq, o.channel);
  if (out.frames.empty()) {
    std::cerr << "error: every frame was dropped\n";
    return kExitUsage;
  }
  const auto bytes = fc::write_y4m_file(out, o.output);
  if (o.verbosity > 0) std::cerr << out.frames.size() << " frames, " << bytes << " bytes\n";
  return kExitOk;
}

int run_bench(const Options& o) {
  const auto sizes = parse_sizes(o.sizes);
  std::ostringstream csv;
  csv << "size_bytes,unique_frames,scheduled_frames,video_bytes,encode_ms,decode_ms\n";
  int status = kExitOk;
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    std::mt19937_64 rng(o.bench_seed ^ sizes[k]);
    std::vector<std::uint8_t> payload(sizes[k]);
    for (auto& b : payload) b = static_cast<std::uint8_t>(rng());

    const auto t0 = std::chrono::steady_clock::now();
    const auto containers = fc::encode_containers(payload, o.spec);
    auto seq = fc::schedule_frames(containers, o.spec);
    const auto t1 = std::chrono::steady_clock::now();
    const auto video_bytes = fc::y4m_byte_count(seq);
    const auto scheduled = seq.frames.size();
    if (o.bench_channel) seq = fc::apply_channel(seq, o.channel);
    const auto t2 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = fc::decode_sequence(seq, o.spec).bytes == payload;
    } catch (const fc::recovery_error& e) {
      std::cerr << "size " << sizes[k] << ": " << e.what() << "\n";
    }
    const auto t3 = std::chrono::steady_clock::now();
    if (!ok) status = kExitIncomplete;
    auto ms = [](auto a, auto b) { return std::chrono::duration<double, std::milli>(b - a).count(); };
    csv << sizes[k] << ',' << containers.size() << ',' << scheduled << ',' << video_bytes << ',' << ms(t0, t1)
        << ',' << ms(t2, t3) << '\n';
  }
  if (o.output.empty()) {
    std::cout << csv.str();
  } else {
    fc::write_file_atomically(o.output, [&](std::ostream& out) { out << csv.str(); });
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Encode files into symbol-frame videos and recover them from recordings"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("-v,--verbose", o.verbosity, "more diagnostics on stderr");

  auto* encode = app.add_subcommand("encode", "file -> .y4m");
  encode->add_option("-i,--input", o.input, "payload file")->required();
  encode->add_option("-o,--output", o.output, "output .y4m")->required();
  add_spec_flags(*encode, o);

  auto* decode = app.add_subcommand("decode", ".y4m recording -> file");
  decode->add_option("-i,--input", o.input, "recorded .y4m")->required();
  decode->add_option("-o,--output", o.output, "recovered file")->required();
  decode->add_option("--report", o.report, "write the decode report as JSON");
  add_spec_flags(*decode, o);

  auto* simulate = app.add_subcommand("simulate", "degrade a .y4m like a screen recording");
  simulate->add_option("-i,--input", o.input, "input .y4m")->required();
  simulate->add_option("-o,--output", o.output, "output .y4m")->required();
  add_channel_flags(*simulate, o);

  auto* bench = app.add_subcommand("bench", "encode/decode random payloads, CSV to stdout");
  bench->add_option("--sizes", o.sizes, "comma-separated payload sizes in bytes")->capture_default_str();
  bench->add_option("--bench-seed", o.bench_seed, "payload seed")->capture_default_str();
  bench->add_flag("--channel", o.bench_channel, "pass frames through the channel simulator");
  bench->add_option("-o,--output", o.output, "write CSV here instead of stdout");
  add_spec_flags(*bench, o);
  add_channel_flags(*bench, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    finalize(o);
    if ((decode->parsed() || simulate->parsed()) && needs_transcode(o.input)) {
      print_transcode_help(o.input);
      return kExitUsage;
    }
    if (encode->parsed()) return run_encode(o);
    if (decode->parsed()) return run_decode(o);
    if (simulate->parsed()) return run_simulate(o);
    return run_bench(o);
  } catch (const fc::codec_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case fc::errc::invalid_spec:
        return kExitUsage;
      case fc::errc::incomplete_recovery:
      case fc::errc::corrupt_payload:
        return kExitIncomplete;
      default:
        return kExitIo;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
}
