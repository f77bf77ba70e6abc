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
#include <cstdint>
#include <cstring>
#include <memory>
#include <span>
#include <vector>

#include "bitstream.hpp"
#include "codec_spec.hpp"
#include "errors.hpp"
#include "framing.hpp"
#include "matrix.hpp"

namespace frame_courier {

/// Grayscale raster, row-major, one byte per sample.
///
/// Copies share the sample buffer until one of them asks for mutable
/// access, so a schedule that repeats a frame a thousand times holds one
/// buffer.
class PixelFrame {
 public:
  PixelFrame() : PixelFrame(0, 0) {}
  PixelFrame(std::uint32_t width, std::uint32_t height, std::uint8_t fill = 0)
      : width_(width),
        height_(height),
        samples_(std::make_shared<std::vector<std::uint8_t>>(static_cast<std::size_t>(width) * height, fill)) {}
  PixelFrame(std::uint32_t width, std::uint32_t height, std::vector<std::uint8_t> samples)
      : width_(width), height_(height) {
    if (samples.size() != static_cast<std::size_t>(width) * height) {
      throw codec_error(errc::shape_mismatch, "sample count does not match frame size");
    }
    samples_ = std::make_shared<std::vector<std::uint8_t>>(std::move(samples));
  }

  std::uint32_t width() const { return width_; }
  std::uint32_t height() const { return height_; }
  std::size_t sample_count() const { return samples_->size(); }

  std::uint8_t at(std::uint32_t x, std::uint32_t y) const {
    return (*samples_)[static_cast<std::size_t>(y) * width_ + x];
  }
  std::span<const std::uint8_t> samples() const { return *samples_; }
  std::span<const std::uint8_t> row(std::uint32_t y) const {
    return {samples_->data() + static_cast<std::size_t>(y) * width_, width_};
  }

  /// Detaches from any sharing copy before handing out write access.
  std::span<std::uint8_t> mutable_samples() {
    if (samples_.use_count() > 1) samples_ = std::make_shared<std::vector<std::uint8_t>>(*samples_);
    return *samples_;
  }
  std::span<std::uint8_t> mutable_row(std::uint32_t y) {
    return mutable_samples().subspan(static_cast<std::size_t>(y) * width_, width_);
  }

  /// True when both frames view the same buffer (cheap identity test).
  bool shares_buffer_with(const PixelFrame& other) const { return samples_ == other.samples_; }

  friend bool operator==(const PixelFrame& a, const PixelFrame& b) {
    if (a.width_ != b.width_ || a.height_ != b.height_) return false;
    if (a.samples_ == b.samples_) return true;
    return *a.samples_ == *b.samples_;
  }

 private:
  std::uint32_t width_;
  std::uint32_t height_;
  std::shared_ptr<std::vector<std::uint8_t>> samples_;
};

/// Copies a rectangular window of src into a new frame.
inline PixelFrame crop(const PixelFrame& src, std::uint32_t left, std::uint32_t top, std::uint32_t width,
                       std::uint32_t height) {
  if (left + width > src.width() || top + height > src.height()) {
    throw codec_error(errc::shape_mismatch, "crop window outside frame");
  }
  PixelFrame out(width, height);
  auto dst = out.mutable_samples();
  for (std::uint32_t y = 0; y < height; ++y) {
    auto line = src.row(top + y).subspan(left, width);
    std::copy(line.begin(), line.end(), dst.begin() + static_cast<std::ptrdiff_t>(y) * width);
  }
  return out;
}

/// Replaces every cell by a block_scale x block_scale block of its pixel value.
inline PixelFrame scale_up(const InfoGrid& info, const CodecSpec& spec) {
  const std::uint32_t s = spec.block_scale;
  const auto rows = static_cast<std::uint32_t>(info.cells.rows());
  const auto cols = static_cast<std::uint32_t>(info.cells.cols());
  PixelFrame out(cols * s, rows * s);
  auto dst = out.mutable_samples();
  const std::size_t width = static_cast<std::size_t>(cols) * s;
  for (std::uint32_t r = 0; r < rows; ++r) {
    std::uint8_t* line = dst.data() + static_cast<std::size_t>(r) * s * width;
    auto cells = info.cells.row(r);
    for (std::uint32_t c = 0; c < cols; ++c) std::memset(line + static_cast<std::size_t>(c) * s, pixel_value(cells[c]), s);
    for (std::uint32_t k = 1; k < s; ++k) std::memcpy(line + k * width, line, width);
  }
  return out;
}

/// Surrounds content with the white inner wall and the black outer wall.
inline PixelFrame wrap_container(const PixelFrame& content, const CodecSpec& spec) {
  const std::uint32_t inner = spec.inner_wall * spec.block_scale;
  const std::uint32_t outer = spec.outer_wall * spec.block_scale;
  const std::uint32_t pad = inner + outer;
  PixelFrame out(content.width() + 2 * pad, content.height() + 2 * pad, kZeroPixel);
  auto dst = out.mutable_samples();
  const std::uint32_t w = out.width();
  for (std::uint32_t y = outer; y < out.height() - outer; ++y) {
    std::memset(dst.data() + static_cast<std::size_t>(y) * w + outer, kOnePixel, w - 2 * outer);
  }
  for (std::uint32_t y = 0; y < content.height(); ++y) {
    auto line = content.row(y);
    std::copy(line.begin(), line.end(), dst.begin() + static_cast<std::ptrdiff_t>(y + pad) * w + pad);
  }
  return out;
}

/// Inverse of wrap_container on an exactly aligned container frame.
inline PixelFrame strip_container(const PixelFrame& container, const CodecSpec& spec) {
  const std::uint32_t pad = (spec.inner_wall + spec.outer_wall) * spec.block_scale;
  if (container.width() <= 2 * pad || container.height() <= 2 * pad) {
    throw codec_error(errc::shape_mismatch, "frame too small to hold a container");
  }
  return crop(container, pad, pad, container.width() - 2 * pad, container.height() - 2 * pad);
}

/// Full encoder raster path for one information grid.
inline PixelFrame render_container(const InfoGrid& info, const CodecSpec& spec) {
  return wrap_container(scale_up(info, spec), spec);
}

using ValueGrid = Matrix<double>;

/// Mean of every block_scale x block_scale block. With inset > 0 only the
/// block core, shrunk by inset pixels per side, is averaged.
inline ValueGrid mean_pool(const PixelFrame& content, const CodecSpec& spec, std::uint32_t inset = 0) {
  const std::uint32_t s = spec.block_scale;
  if (content.width() % s != 0 || content.height() % s != 0) {
    throw codec_error(errc::shape_mismatch, "content is not a whole number of blocks");
  }
  if (2 * inset >= s) throw codec_error(errc::shape_mismatch, "pool inset consumes the whole block");
  const std::uint32_t rows = content.height() / s;
  const std::uint32_t cols = content.width() / s;
  const std::uint32_t span = s - 2 * inset;
  const double norm = 1.0 / (static_cast<double>(span) * span);
  ValueGrid out(rows, cols, 0.0);
  std::vector<std::uint32_t> sums(cols);
  for (std::uint32_t r = 0; r < rows; ++r) {
    std::fill(sums.begin(), sums.end(), 0u);
    for (std::uint32_t y = r * s + inset; y < r * s + s - inset; ++y) {
      auto line = content.row(y);
      for (std::uint32_t c = 0; c < cols; ++c) {
        const std::uint8_t* p = line.data() + static_cast<std::size_t>(c) * s + inset;
        std::uint32_t acc = 0;
        for (std::uint32_t k = 0; k < span; ++k) acc += p[k];
        sums[c] += acc;
      }
    }
    for (std::uint32_t c = 0; c < cols; ++c) out(r, c) = sums[c] * norm;
  }
  return out;
}

/// Nearest canonical level of {0, 128, 255}.
constexpr Symbol quantize_ternary(double value) {
  if (value < 64.0) return Symbol::zero;
  if (value < 192.0) return Symbol::end;
  return Symbol::one;
}

inline SymbolGrid quantize_grid(const ValueGrid& values) {
  SymbolGrid out(values.rows(), values.cols());
  auto src = values.cells();
  auto dst = out.cells();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = quantize_ternary(src[i]);
  return out;
}

}  // namespace frame_courier
