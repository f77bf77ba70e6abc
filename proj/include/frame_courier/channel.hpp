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

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <ostream>
#include <random>
#include <span>
#include <vector>

#include "codec_spec.hpp"
#include "errors.hpp"
#include "parallel.hpp"
#include "pipeline.hpp"
#include "raster.hpp"
#include "videoio.hpp"

namespace frame_courier {

enum class BlurKind { none, box3 };

/// Degradations seen between a player and a screen recorder.
struct ChannelConfig {
  Rational record_fps{60, 1};
  double drop_probability = 0.0;
  std::uint32_t noise_amplitude = 30;
  BlurKind blur = BlurKind::none;
  std::int32_t shift_x = 0;
  std::int32_t shift_y = 0;
  std::uint32_t canvas_margin = 0;
  bool textured_canvas = false;
  double luma_gain = 1.0;
  std::uint64_t seed = 0;

  /// Pass-through channel for a source at the given rate.
  static ChannelConfig identity(Rational source_fps) {
    ChannelConfig cfg;
    cfg.record_fps = source_fps;
    cfg.noise_amplitude = 0;
    return cfg;
  }

  void validate() const {
    auto fail = [](const char* msg) { throw codec_error(errc::invalid_spec, msg); };
    if (record_fps.num == 0 || record_fps.den == 0) fail("record_fps must be positive");
    if (!(drop_probability >= 0.0 && drop_probability <= 1.0)) fail("drop_probability must lie in [0, 1]");
    if (noise_amplitude > 255) fail("noise_amplitude must lie in [0, 255]");
    if (!(luma_gain >= 0.0) || !std::isfinite(luma_gain)) fail("luma_gain must be a non-negative real");
  }
};

namespace detail {

inline std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t stream, std::uint64_t ordinal) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(ordinal),
                    static_cast<std::uint32_t>(ordinal >> 32)};
  return std::mt19937_64(seq);
}

inline constexpr std::uint64_t kDropStream = 1;
inline constexpr std::uint64_t kNoiseStream = 2;
inline constexpr std::uint64_t kCanvasStream = 3;

/// Adds independent uniform offsets in [-amplitude, amplitude] to every
/// sample, clamped. Four 16-bit draws per engine call.
inline void add_uniform_noise(std::span<std::uint8_t> samples, std::uint32_t amplitude, std::mt19937_64& engine) {
  if (amplitude == 0) return;
  const std::uint32_t range = 2 * amplitude + 1;
  // Multiply-shift mapping of a 16-bit draw onto [0, range), rejecting the
  // low products that would bias it.
  const std::uint32_t reject_below = 65536u % range;
  std::size_t i = 0;
  while (i < samples.size()) {
    std::uint64_t word = engine();
    for (int k = 0; k < 4 && i < samples.size(); ++k, word >>= 16) {
      const std::uint32_t product = static_cast<std::uint32_t>(word & 0xFFFFu) * range;
      if ((product & 0xFFFFu) < reject_below) continue;
      const int v = samples[i] + static_cast<int>(product >> 16) - static_cast<int>(amplitude);
      samples[i++] = static_cast<std::uint8_t>(std::clamp(v, 0, 255));
    }
  }
}

/// 3x3 box mean with edge replication, rounded to nearest.
inline PixelFrame box_blur3(const PixelFrame& frame) {
  const std::uint32_t w = frame.width(), h = frame.height();
  PixelFrame out(w, h);
  if (w == 0 || h == 0) return out;
  auto dst = out.mutable_samples();
  std::vector<std::uint16_t> colsum(static_cast<std::size_t>(w) + 2);
  for (std::uint32_t y = 0; y < h; ++y) {
    auto up = frame.row(y == 0 ? 0 : y - 1);
    auto mid = frame.row(y);
    auto down = frame.row(y + 1 == h ? y : y + 1);
    for (std::uint32_t x = 0; x < w; ++x) colsum[x + 1] = static_cast<std::uint16_t>(up[x] + mid[x] + down[x]);
    colsum[0] = colsum[1];
    colsum[w + 1] = colsum[w];
    std::uint8_t* line = dst.data() + static_cast<std::size_t>(y) * w;
    for (std::uint32_t x = 0; x < w; ++x) {
      line[x] = static_cast<std::uint8_t>((colsum[x] + colsum[x + 1] + colsum[x + 2] + 4) / 9);
    }
  }
  return out;
}

/// Static desktop-like background: 16 px tiles of dark-to-mid gray, mostly
/// below the binarization threshold so tiles do not merge into one region.
inline PixelFrame textured_canvas(std::uint32_t w, std::uint32_t h, std::uint64_t seed) {
  constexpr std::uint32_t kTile = 16;
  auto engine = seeded_engine(seed, kCanvasStream, 0);
  std::uniform_int_distribution<int> level(0, 160);
  const std::uint32_t tiles_x = (w + kTile - 1) / kTile, tiles_y = (h + kTile - 1) / kTile;
  std::vector<std::uint8_t> tiles(static_cast<std::size_t>(tiles_x) * tiles_y);
  for (auto& t : tiles) t = static_cast<std::uint8_t>(level(engine));
  PixelFrame out(w, h);
  auto dst = out.mutable_samples();
  for (std::uint32_t y = 0; y < h; ++y)
    for (std::uint32_t x = 0; x < w; ++x)
      dst[static_cast<std::size_t>(y) * w + x] = tiles[static_cast<std::size_t>(y / kTile) * tiles_x + x / kTile];
  return out;
}

inline void paste(PixelFrame& canvas, const PixelFrame& src, std::int64_t left, std::int64_t top) {
  const std::int64_t x0 = std::max<std::int64_t>(0, left), y0 = std::max<std::int64_t>(0, top);
  const std::int64_t x1 = std::min<std::int64_t>(canvas.width(), left + src.width());
  const std::int64_t y1 = std::min<std::int64_t>(canvas.height(), top + src.height());
  if (x0 >= x1 || y0 >= y1) return;
  auto dst = canvas.mutable_samples();
  for (std::int64_t y = y0; y < y1; ++y) {
    auto line = src.row(static_cast<std::uint32_t>(y - top));
    std::copy(line.begin() + (x0 - left), line.begin() + (x1 - left),
              dst.begin() + y * canvas.width() + x0);
  }
}

}  // namespace detail

/// Frames each source frame is held for when recorded at cfg.record_fps.
inline std::uint64_t resample_factor(Rational source_fps, Rational record_fps) {
  return static_cast<std::uint64_t>(std::llround(record_fps.value() / source_fps.value()));
}

/// Resample, drop, paste onto a canvas, add noise, blur, apply gain; in that
/// order. Deterministic for a fixed (input, cfg).
inline FrameSequence apply_channel(const FrameSequence& seq, const ChannelConfig& cfg) {
  cfg.validate();
  FrameSequence out;
  out.fps = cfg.record_fps;
  if (seq.frames.empty()) return out;

  const std::uint64_t hold = resample_factor(seq.fps, cfg.record_fps);
  auto drop_engine = detail::seeded_engine(cfg.seed, detail::kDropStream, 0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  struct Job {
    std::size_t source;
    std::uint64_t ordinal;
  };
  std::vector<Job> jobs;
  std::uint64_t ordinal = 0;
  for (std::size_t i = 0; i < seq.frames.size(); ++i) {
    for (std::uint64_t k = 0; k < hold; ++k, ++ordinal) {
      // One draw per emitted frame keeps drop sets nested as the probability grows.
      if (unit(drop_engine) < cfg.drop_probability) continue;
      jobs.push_back({i, ordinal});
    }
  }

  const std::uint32_t w = seq.frames.front().width(), h = seq.frames.front().height();
  const std::uint32_t cw = w + 2 * cfg.canvas_margin, ch = h + 2 * cfg.canvas_margin;
  const bool passthrough = cfg.canvas_margin == 0 && cfg.shift_x == 0 && cfg.shift_y == 0 &&
                           cfg.noise_amplitude == 0 && cfg.blur == BlurKind::none && cfg.luma_gain == 1.0;
  const PixelFrame background =
      cfg.textured_canvas ? detail::textured_canvas(cw, ch, cfg.seed) : PixelFrame(cw, ch, 0);

  std::array<std::uint8_t, 256> gain_table{};
  for (int v = 0; v < 256; ++v) {
    gain_table[v] = static_cast<std::uint8_t>(std::clamp(std::lround(v * cfg.luma_gain), 0L, 255L));
  }

  out.frames.resize(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t j) {
    const PixelFrame& src = seq.frames[jobs[j].source];
    if (passthrough) {
      out.frames[j] = src;
      return;
    }
    PixelFrame frame = background;
    detail::paste(frame, src, std::int64_t{cfg.canvas_margin} + cfg.shift_x,
                  std::int64_t{cfg.canvas_margin} + cfg.shift_y);
    auto noise_engine = detail::seeded_engine(cfg.seed, detail::kNoiseStream, jobs[j].ordinal);
    detail::add_uniform_noise(frame.mutable_samples(), cfg.noise_amplitude, noise_engine);
    if (cfg.blur == BlurKind::box3) frame = detail::box_blur3(frame);
    if (cfg.luma_gain != 1.0) {
      for (auto& s : frame.mutable_samples()) s = gain_table[s];
    }
    out.frames[j] = std::move(frame);
  });
  return out;
}

struct SweepRow {
  std::size_t config_id = 0;
  double success_rate = 0.0;
  double dup_mean = 0.0;
  double parity_fail_mean = 0.0;
};

/// Encodes once, then runs every config for `trials` seeded trials. Trial t
/// uses seed cfg.seed ^ t.
inline std::vector<SweepRow> sweep(std::span<const std::uint8_t> payload, const CodecSpec& spec,
                                   std::span<const ChannelConfig> grid, std::uint32_t trials) {
  if (trials == 0) throw codec_error(errc::invalid_spec, "sweep needs at least one trial");
  const FrameSequence clean = encode_file(payload, spec);
  std::vector<SweepRow> rows;
  for (std::size_t id = 0; id < grid.size(); ++id) {
    SweepRow row;
    row.config_id = id;
    std::uint32_t ok = 0;
    for (std::uint32_t t = 0; t < trials; ++t) {
      ChannelConfig cfg = grid[id];
      cfg.seed ^= t;
      DecodeReport report;
      try {
        auto result = decode_sequence(apply_channel(clean, cfg), spec);
        report = result.report;
        if (result.bytes.size() == payload.size() && std::equal(result.bytes.begin(), result.bytes.end(), payload.begin())) {
          ++ok;
        }
      } catch (const recovery_error& e) {
        report = e.report();
      }
      row.dup_mean += static_cast<double>(report.duplicates_merged);
      row.parity_fail_mean += static_cast<double>(report.parity_failed);
    }
    row.success_rate = static_cast<double>(ok) / trials;
    row.dup_mean /= trials;
    row.parity_fail_mean /= trials;
    rows.push_back(row);
  }
  return rows;
}

inline void write_sweep_csv(std::span<const SweepRow> rows, std::ostream& out) {
  out << "config_id,success_rate,dup_mean,parity_fail_mean\n";
  for (const auto& r : rows) {
    out << r.config_id << ',' << std::setprecision(6) << r.success_rate << ',' << r.dup_mean << ','
        << r.parity_fail_mean << '\n';
  }
}

}  // namespace frame_courier
