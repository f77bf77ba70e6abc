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
#include <optional>
#include <utility>

#include "bitstream.hpp"
#include "codec_spec.hpp"
#include "errors.hpp"
#include "matrix.hpp"

namespace frame_courier {

// Label column layout. Columns 0, 1, 4 and 5 are reserved and stay ZERO.
inline constexpr std::size_t kIndexColumn = 2;
inline constexpr std::size_t kTotalColumn = 3;
inline constexpr std::size_t kColumnParityColumn = 6;
inline constexpr std::size_t kRowParityColumn = 7;

/// data_rows x 8 metadata companion of a data frame.
struct LabelGrid {
  SymbolGrid cells;
  friend bool operator==(const LabelGrid&, const LabelGrid&) = default;
};

/// Data frame (left) joined with its label grid (right).
struct InfoGrid {
  SymbolGrid cells;
  friend bool operator==(const InfoGrid&, const InfoGrid&) = default;
};

struct FrameCandidate {
  InfoGrid info;
  std::optional<std::uint32_t> voted_index;
  std::optional<std::uint32_t> voted_total;
  bool parity_ok = false;
};

namespace detail {

inline Symbol bit_symbol(unsigned bit) { return bit ? Symbol::one : Symbol::zero; }

/// Parity of every data column, indexed by column.
inline std::vector<std::uint8_t> column_parities(const SymbolGrid& data) {
  std::vector<std::uint8_t> parity(data.cols(), 0);
  for (std::size_t r = 0; r < data.rows(); ++r) {
    auto row = data.row(r);
    for (std::size_t c = 0; c < data.cols(); ++c) parity[c] ^= parity_bit(row[c]);
  }
  return parity;
}

/// Row parities folded with the column-parity cell stored on the same row.
inline std::vector<std::uint8_t> row_parities(const SymbolGrid& data, const std::vector<std::uint8_t>& col_parity) {
  std::vector<std::uint8_t> parity(data.rows(), 0);
  for (std::size_t r = 0; r < data.rows(); ++r) {
    std::uint8_t p = r < col_parity.size() ? col_parity[r] : 0;
    for (Symbol s : data.row(r)) p ^= parity_bit(s);
    parity[r] = p;
  }
  return parity;
}

inline void write_word(SymbolGrid& label, std::size_t column, std::uint32_t value, std::uint32_t copies) {
  for (std::uint32_t copy = 0; copy < copies; ++copy) {
    for (std::uint32_t bit = 0; bit < CodecSpec::kIndexBits; ++bit) {
      const unsigned b = (value >> (CodecSpec::kIndexBits - 1 - bit)) & 1u;
      label(copy * CodecSpec::kIndexBits + bit, column) = bit_symbol(b);
    }
  }
}

/// Cellwise majority over the copies, then big-endian decode. Absent when
/// any bit position lacks a strict majority.
inline std::optional<std::uint32_t> vote_word(const SymbolGrid& label, std::size_t column) {
  const std::size_t copies = label.rows() / CodecSpec::kIndexBits;
  if (copies == 0) return std::nullopt;
  std::uint32_t value = 0;
  for (std::uint32_t bit = 0; bit < CodecSpec::kIndexBits; ++bit) {
    std::size_t ones = 0, zeros = 0;
    for (std::size_t copy = 0; copy < copies; ++copy) {
      const Symbol s = label(copy * CodecSpec::kIndexBits + bit, column);
      ones += s == Symbol::one;
      zeros += s == Symbol::zero;
    }
    unsigned b;
    if (2 * ones > copies) {
      b = 1;
    } else if (2 * zeros > copies) {
      b = 0;
    } else {
      return std::nullopt;
    }
    value = (value << 1) | b;
  }
  return value;
}

}  // namespace detail

/// Builds the label grid: triple-redundant big-endian index and total in
/// columns 2 and 3, column parity in column 6, folded row parity in column 7.
inline LabelGrid build_label_grid(std::uint64_t frame_index, std::uint64_t total, const SymbolGrid& data) {
  if (total > UINT32_MAX || frame_index >= total) {
    throw codec_error(errc::index_out_of_range,
                      "frame index " + std::to_string(frame_index) + " with total " + std::to_string(total));
  }
  if (data.rows() < CodecSpec::kIndexBits || data.cols() > data.rows()) {
    throw codec_error(errc::shape_mismatch, "data grid cannot carry a label grid");
  }
  SymbolGrid label(data.rows(), 8, Symbol::zero);
  const auto copies = static_cast<std::uint32_t>(data.rows() / CodecSpec::kIndexBits);
  detail::write_word(label, kIndexColumn, static_cast<std::uint32_t>(frame_index), copies);
  detail::write_word(label, kTotalColumn, static_cast<std::uint32_t>(total), copies);

  const auto col_parity = detail::column_parities(data);
  const auto row_parity = detail::row_parities(data, col_parity);
  for (std::size_t r = 0; r < data.rows(); ++r) {
    label(r, kColumnParityColumn) = detail::bit_symbol(r < col_parity.size() ? col_parity[r] : 0);
    label(r, kRowParityColumn) = detail::bit_symbol(row_parity[r]);
  }
  return LabelGrid{std::move(label)};
}

inline LabelGrid build_label_grid(const DataFrameGrid& frame) {
  return build_label_grid(frame.frame_index, frame.total_frames, frame.cells);
}

inline InfoGrid compose_info_grid(const SymbolGrid& data, const LabelGrid& label) {
  if (label.cells.cols() != 8 || data.rows() != label.cells.rows()) {
    throw codec_error(errc::shape_mismatch, "label grid does not match data grid");
  }
  return InfoGrid{hconcat(data, label.cells)};
}

inline InfoGrid compose_info_grid(const DataFrameGrid& data, const LabelGrid& label) {
  return compose_info_grid(data.cells, label);
}

/// Splits an information grid into its data and label parts.
inline std::pair<SymbolGrid, SymbolGrid> split_info_grid(const InfoGrid& info, const CodecSpec& spec) {
  if (info.cells.rows() != spec.data_rows || info.cells.cols() != spec.info_cols()) {
    throw codec_error(errc::shape_mismatch, "information grid has the wrong shape");
  }
  return {column_slice(info.cells, 0, spec.data_cols), column_slice(info.cells, spec.data_cols, spec.label_cols)};
}

/// Votes index and total and checks every column and row parity. The
/// candidate is returned even when parity fails.
inline FrameCandidate parse_label_grid(const SymbolGrid& label, const SymbolGrid& data) {
  if (label.cols() != 8 || label.rows() != data.rows() || data.cols() > data.rows() ||
      data.rows() < CodecSpec::kIndexBits) {
    throw codec_error(errc::shape_mismatch, "label/data grids have incompatible shapes");
  }
  FrameCandidate cand;
  cand.info = InfoGrid{hconcat(data, label)};
  cand.voted_index = detail::vote_word(label, kIndexColumn);
  cand.voted_total = detail::vote_word(label, kTotalColumn);

  const auto col_parity = detail::column_parities(data);
  const auto row_parity = detail::row_parities(data, col_parity);
  bool ok = cand.voted_index.has_value() && cand.voted_total.has_value();
  for (std::size_t r = 0; ok && r < data.rows(); ++r) {
    const Symbol expect_col = detail::bit_symbol(r < col_parity.size() ? col_parity[r] : 0);
    ok = label(r, kColumnParityColumn) == expect_col &&
         label(r, kRowParityColumn) == detail::bit_symbol(row_parity[r]);
  }
  cand.parity_ok = ok;
  return cand;
}

inline FrameCandidate parse_info_grid(const InfoGrid& info, const CodecSpec& spec) {
  auto [data, label] = split_info_grid(info, spec);
  return parse_label_grid(label, data);
}

}  // namespace frame_courier
