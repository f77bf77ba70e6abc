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

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "codec_spec.hpp"
#include "errors.hpp"
#include "raster.hpp"

namespace frame_courier {

struct FrameSequence {
  std::vector<PixelFrame> frames;
  Rational fps{5, 1};

  double duration_seconds() const { return static_cast<double>(frames.size()) / fps.value(); }
};

/// Carries every complete frame that was read before the stream ended.
class truncated_frame_error : public codec_error {
 public:
  truncated_frame_error(const std::string& what, FrameSequence partial)
      : codec_error(errc::truncated_frame, what), partial_(std::move(partial)) {}

  const FrameSequence& partial() const noexcept { return partial_; }

 private:
  FrameSequence partial_;
};

inline std::uint64_t scheduled_frame_count(std::uint64_t unique_frames, const CodecSpec& spec) {
  return spec.head_repeat + static_cast<std::uint64_t>(spec.body_repeat) * unique_frames;
}

/// head_repeat extra copies of the first container, then body_repeat copies
/// of the whole list. Copies share pixel buffers.
inline FrameSequence schedule_frames(std::span<const PixelFrame> containers, const CodecSpec& spec) {
  if (containers.empty()) throw codec_error(errc::empty_input, "no container frames to schedule");
  FrameSequence seq;
  seq.fps = spec.fps;
  seq.frames.reserve(scheduled_frame_count(containers.size(), spec));
  for (std::uint32_t i = 0; i < spec.head_repeat; ++i) seq.frames.push_back(containers.front());
  for (std::uint32_t rep = 0; rep < spec.body_repeat; ++rep) {
    seq.frames.insert(seq.frames.end(), containers.begin(), containers.end());
  }
  return seq;
}

// ---------------------------------------------------------------------------
// YUV4MPEG2

inline std::string y4m_header(std::uint32_t width, std::uint32_t height, Rational fps) {
  const Rational r = fps.reduced();
  return "YUV4MPEG2 W" + std::to_string(width) + " H" + std::to_string(height) + " F" + std::to_string(r.num) + ":" +
         std::to_string(r.den) + " Ip A1:1 Cmono\n";
}

/// Writes a mono YUV4MPEG2 stream. Returns the number of bytes written.
inline std::uint64_t write_y4m(const FrameSequence& seq, std::ostream& sink) {
  if (seq.frames.empty()) throw codec_error(errc::empty_input, "cannot write an empty sequence");
  const std::uint32_t w = seq.frames.front().width();
  const std::uint32_t h = seq.frames.front().height();
  const std::string header = y4m_header(w, h, seq.fps);
  sink.write(header.data(), static_cast<std::streamsize>(header.size()));
  std::uint64_t written = header.size();
  static constexpr char kFrameTag[] = "FRAME\n";
  for (const auto& f : seq.frames) {
    if (f.width() != w || f.height() != h) throw codec_error(errc::shape_mismatch, "frames differ in size");
    sink.write(kFrameTag, 6);
    auto s = f.samples();
    sink.write(reinterpret_cast<const char*>(s.data()), static_cast<std::streamsize>(s.size()));
    written += 6 + s.size();
  }
  if (!sink) throw codec_error(errc::io_failure, "write failed");
  return written;
}

/// Size write_y4m would produce for seq.
inline std::uint64_t y4m_byte_count(const FrameSequence& seq) {
  if (seq.frames.empty()) return 0;
  const auto& f = seq.frames.front();
  return y4m_header(f.width(), f.height(), seq.fps).size() + seq.frames.size() * (6 + f.sample_count());
}

/// Streaming YUV4MPEG2 reader. Keeps the luma plane of every frame and
/// skips chroma planes.
class Y4mReader {
 public:
  explicit Y4mReader(std::istream& source) : in_(source) { parse_header(); }

  std::uint32_t width() const { return width_; }
  std::uint32_t height() const { return height_; }
  Rational fps() const { return fps_; }

  /// Next frame, or nullopt at a clean end of stream. Throws
  /// codec_error(truncated_frame) when the stream stops inside a frame.
  std::optional<PixelFrame> next() {
    std::string tag;
    int ch;
    while ((ch = in_.get()) != EOF && ch != '\n') {
      tag.push_back(static_cast<char>(ch));
      if (tag.size() > 4096) throw codec_error(errc::malformed_header, "unterminated FRAME line");
    }
    if (tag.empty() && ch == EOF) return std::nullopt;
    const std::string_view marker = "FRAME";
    if (ch == EOF && (marker.starts_with(tag) || tag.starts_with(marker))) {
      throw codec_error(errc::truncated_frame, "stream ends inside a FRAME line");
    }
    if (!tag.starts_with(marker) || (tag.size() > 5 && tag[5] != ' ')) {
      throw codec_error(errc::malformed_header, "expected FRAME marker");
    }
    std::vector<std::uint8_t> luma(static_cast<std::size_t>(width_) * height_);
    in_.read(reinterpret_cast<char*>(luma.data()), static_cast<std::streamsize>(luma.size()));
    if (static_cast<std::size_t>(in_.gcount()) != luma.size()) {
      throw codec_error(errc::truncated_frame, "stream ends inside a luma plane");
    }
    if (chroma_bytes_ > 0) {
      in_.ignore(static_cast<std::streamsize>(chroma_bytes_));
      if (static_cast<std::uint64_t>(in_.gcount()) != chroma_bytes_) {
        throw codec_error(errc::truncated_frame, "stream ends inside a chroma plane");
      }
    }
    return PixelFrame(width_, height_, std::move(luma));
  }

 private:
  void parse_header() {
    std::string line;
    if (!std::getline(in_, line) || in_.eof()) throw codec_error(errc::malformed_header, "missing header line");
    std::istringstream tokens(line);
    std::string magic;
    tokens >> magic;
    if (magic != "YUV4MPEG2") throw codec_error(errc::malformed_header, "bad magic '" + magic + "'");
    std::string colorspace = "420jpeg";
    std::string tok;
    try {
      while (tokens >> tok) {
        const char key = tok[0];
        const std::string val = tok.substr(1);
        if (key == 'W') {
          width_ = static_cast<std::uint32_t>(std::stoul(val));
        } else if (key == 'H') {
          height_ = static_cast<std::uint32_t>(std::stoul(val));
        } else if (key == 'F') {
          const auto colon = val.find(':');
          if (colon == std::string::npos) throw codec_error(errc::malformed_header, "bad frame rate " + tok);
          fps_ = Rational{static_cast<std::uint32_t>(std::stoul(val.substr(0, colon))),
                          static_cast<std::uint32_t>(std::stoul(val.substr(colon + 1)))};
        } else if (key == 'C') {
          colorspace = val;
        }
        // I, A, X and unknown parameters do not affect the luma plane.
      }
    } catch (const std::logic_error&) {
      throw codec_error(errc::malformed_header, "unparsable header parameter '" + tok + "'");
    }
    if (width_ == 0 || height_ == 0) throw codec_error(errc::malformed_header, "missing frame size");
    if (fps_.num == 0 || fps_.den == 0) throw codec_error(errc::malformed_header, "invalid frame rate");
    const std::uint64_t cw = (width_ + 1) / 2, ch = (height_ + 1) / 2;
    const std::uint64_t full = static_cast<std::uint64_t>(width_) * height_;
    if (colorspace == "mono") {
      chroma_bytes_ = 0;
    } else if (colorspace.rfind("420", 0) == 0 && colorspace.find("p1") == std::string::npos) {
      chroma_bytes_ = 2 * cw * ch;
    } else if (colorspace == "422") {
      chroma_bytes_ = 2 * cw * height_;
    } else if (colorspace == "444") {
      chroma_bytes_ = 2 * full;
    } else {
      throw codec_error(errc::malformed_header, "unsupported colorspace C" + colorspace);
    }
  }

  std::istream& in_;
  std::uint32_t width_ = 0;
  std::uint32_t height_ = 0;
  Rational fps_{0, 0};
  std::uint64_t chroma_bytes_ = 0;
};

/// Reads a whole YUV4MPEG2 stream. On truncation throws
/// truncated_frame_error holding the complete frames.
inline FrameSequence read_y4m(std::istream& source) {
  Y4mReader reader(source);
  FrameSequence seq;
  seq.fps = reader.fps();
  try {
    while (auto frame = reader.next()) seq.frames.push_back(std::move(*frame));
  } catch (const codec_error& e) {
    if (e.code() != errc::truncated_frame) throw;
    throw truncated_frame_error(std::string(e.what()) + " after " + std::to_string(seq.frames.size()) + " frames",
                                std::move(seq));
  }
  return seq;
}

/// Writes to a temporary sibling and renames it into place.
template <class WriteFn>
void write_file_atomically(const std::filesystem::path& path, WriteFn&& write) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw codec_error(errc::io_failure, "cannot open " + tmp.string());
    write(out);
    out.flush();
    if (!out) throw codec_error(errc::io_failure, "cannot write " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw codec_error(errc::io_failure, "cannot rename into " + path.string());
  }
}

inline std::uint64_t write_y4m_file(const FrameSequence& seq, const std::filesystem::path& path) {
  std::uint64_t bytes = 0;
  write_file_atomically(path, [&](std::ostream& out) { bytes = write_y4m(seq, out); });
  return bytes;
}

inline FrameSequence read_y4m_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw codec_error(errc::io_failure, "cannot open " + path.string());
  return read_y4m(in);
}

}  // namespace frame_courier
