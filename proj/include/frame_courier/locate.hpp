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
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "codec_spec.hpp"
#include "errors.hpp"
#include "raster.hpp"

namespace frame_courier {

/// Axis-aligned pixel rectangle, half-open on the right and bottom.
struct RegionBox {
  std::uint32_t left = 0;
  std::uint32_t top = 0;
  std::uint32_t width = 0;
  std::uint32_t height = 0;

  friend bool operator==(const RegionBox&, const RegionBox&) = default;
};

inline constexpr std::uint8_t kBinarizeThreshold = 127;
inline constexpr double kMinContainerAreaFraction = 0.10;
inline constexpr double kAspectTolerance = 0.12;
inline constexpr double kMinBoxScale = 0.2;

namespace detail {

inline std::uint8_t median9(std::uint8_t* p) {
  // Paeth's 19-exchange network.
  auto sort2 = [](std::uint8_t& a, std::uint8_t& b) {
    const std::uint8_t lo = std::min(a, b);
    b = std::max(a, b);
    a = lo;
  };
  sort2(p[1], p[2]); sort2(p[4], p[5]); sort2(p[7], p[8]);
  sort2(p[0], p[1]); sort2(p[3], p[4]); sort2(p[6], p[7]);
  sort2(p[1], p[2]); sort2(p[4], p[5]); sort2(p[7], p[8]);
  sort2(p[0], p[3]); sort2(p[5], p[8]); sort2(p[4], p[7]);
  sort2(p[3], p[6]); sort2(p[1], p[4]); sort2(p[2], p[5]);
  sort2(p[4], p[7]); sort2(p[4], p[2]); sort2(p[6], p[4]);
  sort2(p[4], p[2]);
  return p[4];
}

inline std::uint32_t clamp_index(std::int64_t i, std::uint32_t n) {
  return static_cast<std::uint32_t>(std::clamp<std::int64_t>(i, 0, static_cast<std::int64_t>(n) - 1));
}

}  // namespace detail

/// 3x3 median with edge replication.
inline PixelFrame median_denoise(const PixelFrame& frame) {
  const std::uint32_t w = frame.width(), h = frame.height();
  PixelFrame out(w, h);
  if (w == 0 || h == 0) return out;
  auto dst = out.mutable_samples();
  std::uint8_t window[9];
  for (std::uint32_t y = 0; y < h; ++y) {
    const std::uint8_t* rows[3] = {frame.row(detail::clamp_index(std::int64_t{y} - 1, h)).data(),
                                   frame.row(y).data(), frame.row(detail::clamp_index(std::int64_t{y} + 1, h)).data()};
    for (std::uint32_t x = 0; x < w; ++x) {
      const std::uint32_t xs[3] = {detail::clamp_index(std::int64_t{x} - 1, w), x,
                                   detail::clamp_index(std::int64_t{x} + 1, w)};
      for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i) window[j * 3 + i] = rows[j][xs[i]];
      dst[static_cast<std::size_t>(y) * w + x] = detail::median9(window);
    }
  }
  return out;
}

/// 0 for samples <= 127, 255 above.
inline PixelFrame binarize(const PixelFrame& frame) {
  PixelFrame out(frame.width(), frame.height());
  auto src = frame.samples();
  auto dst = out.mutable_samples();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] > kBinarizeThreshold ? 255 : 0;
  return out;
}

/// binarize(median_denoise(frame)) without sorting: a 3x3 median lies above
/// the threshold exactly when at least five window samples do.
inline PixelFrame denoise_binarize(const PixelFrame& frame) {
  const std::uint32_t w = frame.width(), h = frame.height();
  PixelFrame out(w, h);
  if (w == 0 || h == 0) return out;
  auto src = frame.samples();
  std::vector<std::uint8_t> bits(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) bits[i] = src[i] > kBinarizeThreshold;

  auto dst = out.mutable_samples();
  std::vector<std::uint8_t> colsum(static_cast<std::size_t>(w) + 2);
  for (std::uint32_t y = 0; y < h; ++y) {
    const std::uint8_t* up = bits.data() + static_cast<std::size_t>(detail::clamp_index(std::int64_t{y} - 1, h)) * w;
    const std::uint8_t* mid = bits.data() + static_cast<std::size_t>(y) * w;
    const std::uint8_t* down = bits.data() + static_cast<std::size_t>(detail::clamp_index(std::int64_t{y} + 1, h)) * w;
    for (std::uint32_t x = 0; x < w; ++x) colsum[x + 1] = static_cast<std::uint8_t>(up[x] + mid[x] + down[x]);
    colsum[0] = colsum[1];
    colsum[w + 1] = colsum[w];
    std::uint8_t* line = dst.data() + static_cast<std::size_t>(y) * w;
    for (std::uint32_t x = 0; x < w; ++x) {
      line[x] = (colsum[x] + colsum[x + 1] + colsum[x + 2]) >= 5 ? 255 : 0;
    }
  }
  return out;
}

/// Bounding boxes of the 8-connected white components of a binary frame.
inline std::vector<RegionBox> white_component_boxes(const PixelFrame& binary) {
  struct Run {
    std::uint32_t x0, x1;  // [x0, x1)
    std::uint32_t y;
  };
  std::vector<Run> runs;
  std::vector<std::size_t> row_start(binary.height() + 1, 0);
  for (std::uint32_t y = 0; y < binary.height(); ++y) {
    row_start[y] = runs.size();
    auto line = binary.row(y);
    std::uint32_t x = 0;
    const std::uint32_t w = binary.width();
    while (x < w) {
      while (x < w && line[x] == 0) ++x;
      if (x == w) break;
      const std::uint32_t start = x;
      while (x < w && line[x] != 0) ++x;
      runs.push_back({start, x, y});
    }
  }
  row_start[binary.height()] = runs.size();

  std::vector<std::size_t> parent(runs.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::uint32_t y = 1; y < binary.height(); ++y) {
    std::size_t p = row_start[y - 1];
    const std::size_t p_end = row_start[y];
    for (std::size_t c = row_start[y]; c < row_start[y + 1]; ++c) {
      // Runs touch under 8-connectivity when they overlap after widening by one.
      while (p < p_end && runs[p].x1 < runs[c].x0) ++p;
      for (std::size_t q = p; q < p_end && runs[q].x0 <= runs[c].x1; ++q) {
        const std::size_t a = find(q), b = find(c);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }

  std::vector<RegionBox> boxes;
  std::vector<std::size_t> slot(runs.size(), SIZE_MAX);
  std::vector<std::uint32_t> right, bottom;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const std::size_t root = find(i);
    if (slot[root] == SIZE_MAX) {
      slot[root] = boxes.size();
      boxes.push_back({runs[i].x0, runs[i].y, 0, 0});
      right.push_back(runs[i].x1);
      bottom.push_back(runs[i].y + 1);
      continue;
    }
    auto& box = boxes[slot[root]];
    box.left = std::min(box.left, runs[i].x0);
    box.top = std::min(box.top, runs[i].y);
    right[slot[root]] = std::max(right[slot[root]], runs[i].x1);
    bottom[slot[root]] = std::max(bottom[slot[root]], runs[i].y + 1);
  }
  for (std::size_t k = 0; k < boxes.size(); ++k) {
    boxes[k].width = right[k] - boxes[k].left;
    boxes[k].height = bottom[k] - boxes[k].top;
  }
  return boxes;
}

/// Picks the container's inner-wall boundary among the white components:
/// large enough, right aspect ratio, largest box wins.
inline std::optional<RegionBox> find_container(const PixelFrame& binary, const CodecSpec& spec) {
  const double frame_area = static_cast<double>(binary.width()) * binary.height();
  const double expected_aspect = static_cast<double>(spec.inner_width()) / spec.inner_height();
  std::optional<RegionBox> best;
  double best_area = 0.0;
  for (const auto& box : white_component_boxes(binary)) {
    const double area = static_cast<double>(box.width) * box.height;
    if (area < kMinContainerAreaFraction * frame_area) continue;
    const double aspect = static_cast<double>(box.width) / box.height;
    if (std::abs(aspect / expected_aspect - 1.0) > kAspectTolerance) continue;
    if (area > best_area) {
      best = box;
      best_area = area;
    }
  }
  return best;
}

inline RegionBox locate_container(const PixelFrame& binary, const CodecSpec& spec) {
  if (auto box = find_container(binary, spec)) return *box;
  throw codec_error(errc::container_not_found, "no component matches the container shape");
}

namespace detail {

struct AxisWeights {
  std::uint32_t first;
  std::vector<double> weights;
};

/// Coverage of each output interval over the source samples [origin, origin + length).
inline std::vector<AxisWeights> area_weights(std::uint32_t origin, std::uint32_t length, std::uint32_t out_len) {
  std::vector<AxisWeights> out(out_len);
  const double step = static_cast<double>(length) / out_len;
  for (std::uint32_t i = 0; i < out_len; ++i) {
    const double lo = i * step, hi = (i + 1) * step;
    const auto first = static_cast<std::uint32_t>(std::floor(lo));
    const auto last = std::min<std::uint32_t>(static_cast<std::uint32_t>(std::ceil(hi)), length);
    out[i].first = origin + first;
    for (std::uint32_t s = first; s < last; ++s) {
      const double cover = std::min<double>(hi, s + 1) - std::max<double>(lo, s);
      out[i].weights.push_back(cover / step);
    }
  }
  return out;
}

}  // namespace detail

/// Area-average resample of a window of src to out_w x out_h.
inline PixelFrame resample_area(const PixelFrame& src, const RegionBox& box, std::uint32_t out_w,
                                std::uint32_t out_h) {
  if (box.left + box.width > src.width() || box.top + box.height > src.height() || box.width == 0 ||
      box.height == 0) {
    throw codec_error(errc::shape_mismatch, "resample window outside frame");
  }
  if (box.width == out_w && box.height == out_h) return crop(src, box.left, box.top, out_w, out_h);
  const auto wx = detail::area_weights(box.left, box.width, out_w);
  const auto wy = detail::area_weights(box.top, box.height, out_h);
  std::vector<double> horiz(static_cast<std::size_t>(box.height) * out_w);
  for (std::uint32_t y = 0; y < box.height; ++y) {
    auto line = src.row(box.top + y);
    double* dst = horiz.data() + static_cast<std::size_t>(y) * out_w;
    for (std::uint32_t x = 0; x < out_w; ++x) {
      double acc = 0.0;
      const auto& ax = wx[x];
      for (std::size_t k = 0; k < ax.weights.size(); ++k) acc += ax.weights[k] * line[ax.first + k];
      dst[x] = acc;
    }
  }
  PixelFrame out(out_w, out_h);
  auto dst = out.mutable_samples();
  std::vector<double> acc(out_w);
  for (std::uint32_t y = 0; y < out_h; ++y) {
    std::fill(acc.begin(), acc.end(), 0.0);
    const auto& ay = wy[y];
    for (std::size_t k = 0; k < ay.weights.size(); ++k) {
      const double wgt = ay.weights[k];
      const double* src_row = horiz.data() + static_cast<std::size_t>(ay.first - box.top + k) * out_w;
      for (std::uint32_t x = 0; x < out_w; ++x) acc[x] += wgt * src_row[x];
    }
    std::uint8_t* line = dst.data() + static_cast<std::size_t>(y) * out_w;
    for (std::uint32_t x = 0; x < out_w; ++x) {
      line[x] = static_cast<std::uint8_t>(std::clamp(std::lround(acc[x]), 0L, 255L));
    }
  }
  return out;
}

/// Maps the located inner-wall box onto the canonical raster and strips the
/// inner wall, leaving the content region.
inline PixelFrame normalize_region(const PixelFrame& frame, const RegionBox& box, const CodecSpec& spec) {
  if (box.width < kMinBoxScale * spec.inner_width() || box.height < kMinBoxScale * spec.inner_height()) {
    throw codec_error(errc::degenerate_box, "container box " + std::to_string(box.width) + "x" +
                                                std::to_string(box.height) + " is too small to sample");
  }
  const PixelFrame inner = resample_area(frame, box, spec.inner_width(), spec.inner_height());
  const std::uint32_t wall = spec.inner_wall * spec.block_scale;
  return crop(inner, wall, wall, spec.content_width(), spec.content_height());
}

}  // namespace frame_courier
