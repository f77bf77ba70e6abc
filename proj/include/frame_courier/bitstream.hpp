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
#include <span>
#include <string>
#include <vector>

#include "codec_spec.hpp"
#include "errors.hpp"
#include "matrix.hpp"

namespace frame_courier {

/// One ternary cell. The numeric values are the standardized decode values
/// (0, 1, 2); pixel_value gives the raster intensity.
enum class Symbol : std::uint8_t { zero = 0, one = 1, end = 2 };

inline constexpr std::uint8_t kZeroPixel = 0;
inline constexpr std::uint8_t kOnePixel = 255;
inline constexpr std::uint8_t kEndPixel = 128;

constexpr std::uint8_t pixel_value(Symbol s) {
  switch (s) {
    case Symbol::zero: return kZeroPixel;
    case Symbol::one: return kOnePixel;
    case Symbol::end: return kEndPixel;
  }
  return kEndPixel;
}

/// Parity contribution: END is padding and counts as 0.
constexpr std::uint8_t parity_bit(Symbol s) { return s == Symbol::one ? 1 : 0; }

using SymbolGrid = Matrix<Symbol>;

/// Whole-file payload. Bit count is always 8 x byte count.
struct BitPayload {
  std::vector<std::uint8_t> bytes;

  std::uint64_t bit_count() const { return static_cast<std::uint64_t>(bytes.size()) * 8; }
  friend bool operator==(const BitPayload&, const BitPayload&) = default;
};

/// One data_rows x data_cols payload frame.
struct DataFrameGrid {
  SymbolGrid cells;
  std::uint32_t frame_index = 0;
  std::uint32_t total_frames = 1;

  friend bool operator==(const DataFrameGrid&, const DataFrameGrid&) = default;
};

/// Expands each byte MSB-first into eight ZERO/ONE symbols.
inline std::vector<Symbol> bytes_to_symbols(std::span<const std::uint8_t> bytes) {
  std::vector<Symbol> out;
  out.reserve(bytes.size() * 8);
  for (std::uint8_t b : bytes) {
    for (int bit = 7; bit >= 0; --bit) out.push_back(((b >> bit) & 1u) ? Symbol::one : Symbol::zero);
  }
  return out;
}

/// Packs the ZERO/ONE prefix that precedes the first END back into bytes.
/// A sequence without END is accepted when its length is byte aligned.
inline BitPayload symbols_to_bytes(std::span<const Symbol> symbols) {
  const auto stop = std::find(symbols.begin(), symbols.end(), Symbol::end);
  const auto prefix = static_cast<std::size_t>(stop - symbols.begin());
  if (prefix % 8 != 0) {
    throw codec_error(errc::prefix_not_byte_aligned,
                      "payload prefix of " + std::to_string(prefix) + " symbols is not a whole number of bytes");
  }
  BitPayload payload;
  payload.bytes.resize(prefix / 8);
  for (std::size_t i = 0; i < prefix; ++i) {
    payload.bytes[i / 8] = static_cast<std::uint8_t>((payload.bytes[i / 8] << 1) | parity_bit(symbols[i]));
  }
  return payload;
}

/// Frames needed for a payload of bit_count bits. There is always room for
/// at least one END cell, so an exact multiple gets an extra all-END frame.
inline std::uint64_t frame_count_for_bits(std::uint64_t bit_count, const CodecSpec& spec) {
  return bit_count / spec.cells_per_frame() + 1;
}

/// Splits ZERO/ONE symbols into row-major frames and pads the tail with END.
inline std::vector<DataFrameGrid> chunk_to_frames(std::span<const Symbol> symbols, const CodecSpec& spec) {
  const std::uint64_t per_frame = spec.cells_per_frame();
  const std::uint64_t total = frame_count_for_bits(symbols.size(), spec);
  if (total > UINT32_MAX) throw codec_error(errc::file_too_large, "payload needs more than 2^32-1 frames");

  std::vector<DataFrameGrid> frames;
  frames.reserve(total);
  for (std::uint64_t f = 0; f < total; ++f) {
    DataFrameGrid grid{SymbolGrid(spec.data_rows, spec.data_cols, Symbol::end), static_cast<std::uint32_t>(f),
                       static_cast<std::uint32_t>(total)};
    const std::uint64_t begin = std::min<std::uint64_t>(f * per_frame, symbols.size());
    const std::uint64_t end = std::min<std::uint64_t>(begin + per_frame, symbols.size());
    std::copy(symbols.begin() + static_cast<std::ptrdiff_t>(begin), symbols.begin() + static_cast<std::ptrdiff_t>(end),
              grid.cells.cells().begin());
    frames.push_back(std::move(grid));
  }
  return frames;
}

/// Concatenates frame cells in frame order, row-major inside each frame.
inline std::vector<Symbol> flatten_frames(std::span<const DataFrameGrid> frames) {
  std::vector<Symbol> out;
  for (const auto& f : frames) out.insert(out.end(), f.cells.cells().begin(), f.cells.cells().end());
  return out;
}

}  // namespace frame_courier
