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

#include "frame_courier/framing.hpp"

#include <gtest/gtest.h>

#include <random>

namespace fc = frame_courier;
using fc::Symbol;

namespace {

fc::SymbolGrid random_symbols(std::mt19937_64& rng, const fc::CodecSpec& spec) {
  fc::SymbolGrid g(spec.data_rows, spec.data_cols);
  for (auto& s : g.cells()) s = (rng() & 1) ? Symbol::one : Symbol::zero;
  return g;
}

// Parity oracle written directly from the definition: column parity of data
// column i goes to row i; the row check covers data row r plus the stored
// column-parity cell of row r.
std::pair<std::vector<int>, std::vector<int>> oracle_parities(const fc::SymbolGrid& data) {
  std::vector<int> col(data.rows(), 0), row(data.rows(), 0);
  for (std::size_t c = 0; c < data.cols(); ++c) {
    int p = 0;
    for (std::size_t r = 0; r < data.rows(); ++r) p += data(r, c) == Symbol::one;
    col[c] = p % 2;
  }
  for (std::size_t r = 0; r < data.rows(); ++r) {
    int p = col[r];
    for (std::size_t c = 0; c < data.cols(); ++c) p += data(r, c) == Symbol::one;
    row[r] = p % 2;
  }
  return {col, row};
}

Symbol flip(Symbol s) { return s == Symbol::one ? Symbol::zero : Symbol::one; }

}  // namespace

TEST(Framing, FirstOfOneAllEndFrame) {
  const fc::CodecSpec spec;
  const fc::SymbolGrid data(96, 96, Symbol::end);
  const auto label = fc::build_label_grid(0, 1, data).cells;
  ASSERT_EQ(label.rows(), 96u);
  ASSERT_EQ(label.cols(), 8u);
  for (std::size_t r = 0; r < 96; ++r) {
    EXPECT_EQ(label(r, 2), Symbol::zero);
    EXPECT_EQ(label(r, 3), r % 32 == 31 ? Symbol::one : Symbol::zero) << r;
    EXPECT_EQ(label(r, 6), Symbol::zero);
    EXPECT_EQ(label(r, 7), Symbol::zero);
    for (std::size_t c : {0, 1, 4, 5}) EXPECT_EQ(label(r, c), Symbol::zero);
  }
}

TEST(Framing, IndexFiveBigEndianTail) {
  const fc::SymbolGrid data(96, 96, Symbol::zero);
  const auto label = fc::build_label_grid(5, 9, data).cells;
  const std::vector<Symbol> tail{Symbol::zero, Symbol::zero, Symbol::zero, Symbol::one, Symbol::zero, Symbol::one};
  for (std::size_t copy = 0; copy < 3; ++copy) {
    for (std::size_t k = 0; k < 6; ++k) EXPECT_EQ(label(copy * 32 + 26 + k, 2), tail[k]);
    for (std::size_t k = 0; k < 26; ++k) EXPECT_EQ(label(copy * 32 + k, 2), Symbol::zero);
  }
}

TEST(Framing, SingleOneParityPlacement) {
  fc::SymbolGrid data(96, 96, Symbol::zero);
  data(3, 7) = Symbol::one;
  const auto label = fc::build_label_grid(0, 1, data).cells;
  const auto [col, row] = oracle_parities(data);
  for (std::size_t r = 0; r < 96; ++r) {
    EXPECT_EQ(label(r, 6), col[r] ? Symbol::one : Symbol::zero) << r;
    EXPECT_EQ(label(r, 7), row[r] ? Symbol::one : Symbol::zero) << r;
  }
  // Column 6 holds the parity of data column 7 on row 7. The row check folds
  // that cell in, so rows 3 (the data cell) and 7 (the parity cell) are odd.
  EXPECT_EQ(label(7, 6), Symbol::one);
  EXPECT_EQ(label(3, 7), Symbol::one);
  EXPECT_EQ(label(7, 7), Symbol::one);
  EXPECT_EQ(std::count(label.cells().begin(), label.cells().end(), Symbol::one), 3 + 3 * 1);
}

TEST(Framing, ParityMatchesOracleOnRandomGrids) {
  const fc::CodecSpec spec;
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    auto data = random_symbols(rng, spec);
    if (t % 5 == 0) {
      // END tail counts as zero.
      for (std::size_t i = rng() % data.size(); i < data.size(); ++i) data.cells()[i] = Symbol::end;
    }
    const auto label = fc::build_label_grid(t, 50, data).cells;
    const auto [col, row] = oracle_parities(data);
    for (std::size_t r = 0; r < 96; ++r) {
      ASSERT_EQ(label(r, 6) == Symbol::one, col[r] == 1);
      ASSERT_EQ(label(r, 7) == Symbol::one, row[r] == 1);
    }
  }
}

TEST(Framing, RejectsIndexOutsideTotal) {
  const fc::SymbolGrid data(96, 96, Symbol::zero);
  EXPECT_THROW(fc::build_label_grid(3, 3, data), fc::codec_error);
  EXPECT_THROW(fc::build_label_grid(0, 0, data), fc::codec_error);
  EXPECT_THROW(fc::build_label_grid(0, std::uint64_t{1} << 32, data), fc::codec_error);
  EXPECT_NO_THROW(fc::build_label_grid(UINT32_MAX - 1, UINT32_MAX, data));
}

TEST(Framing, ParseInvertsBuild) {
  const fc::CodecSpec spec;
  std::mt19937_64 rng(3);
  for (std::uint32_t idx : {0u, 1u, 77u, 123456u, UINT32_MAX - 1}) {
    const auto data = random_symbols(rng, spec);
    const auto label = fc::build_label_grid(idx, std::uint64_t{idx} + 1, data);
    const auto cand = fc::parse_label_grid(label.cells, data);
    EXPECT_TRUE(cand.parity_ok);
    EXPECT_EQ(cand.voted_index, idx);
    EXPECT_EQ(cand.voted_total, idx + 1);
    EXPECT_EQ(cand.info, fc::compose_info_grid(data, label));
  }
}

TEST(Framing, EverySingleFlipIsDetected) {
  const fc::CodecSpec spec;
  std::mt19937_64 rng(5);
  const auto data = random_symbols(rng, spec);
  const auto label = fc::build_label_grid(2, 4, data);
  // Exhaustive over every data position for one grid.
  for (std::size_t i = 0; i < data.size(); ++i) {
    auto bad = data;
    bad.cells()[i] = flip(bad.cells()[i]);
    ASSERT_FALSE(fc::parse_label_grid(label.cells, bad).parity_ok) << i;
  }
}

TEST(Framing, MajorityVoteSurvivesOneCorruptCopy) {
  const fc::SymbolGrid data(96, 96, Symbol::zero);
  auto label = fc::build_label_grid(41, 100, data).cells;
  label(32 + 30, 2) = flip(label(32 + 30, 2));
  label(64 + 3, 3) = Symbol::end;
  const auto cand = fc::parse_label_grid(label, data);
  EXPECT_EQ(cand.voted_index, 41u);
  EXPECT_EQ(cand.voted_total, 100u);
  EXPECT_TRUE(cand.parity_ok);
}

TEST(Framing, TwoCorruptCopiesLoseTheVote) {
  const fc::SymbolGrid data(96, 96, Symbol::zero);
  auto label = fc::build_label_grid(41, 100, data).cells;
  label(5, 2) = Symbol::end;
  label(32 + 5, 2) = Symbol::end;
  const auto cand = fc::parse_label_grid(label, data);
  EXPECT_FALSE(cand.voted_index.has_value());
  EXPECT_FALSE(cand.parity_ok);
}

TEST(Framing, ReservedColumnsAreIgnored) {
  std::mt19937_64 rng(9);
  const fc::CodecSpec spec;
  const auto data = random_symbols(rng, spec);
  auto label = fc::build_label_grid(8, 9, data).cells;
  for (std::size_t r = 0; r < 96; ++r)
    for (std::size_t c : {0, 1, 4, 5}) label(r, c) = static_cast<Symbol>(rng() % 3);
  const auto cand = fc::parse_label_grid(label, data);
  EXPECT_TRUE(cand.parity_ok);
  EXPECT_EQ(cand.voted_index, 8u);
}

TEST(Framing, ComposeAndSplitAreInverse) {
  const fc::CodecSpec spec;
  std::mt19937_64 rng(1);
  const auto data = random_symbols(rng, spec);
  const auto label = fc::build_label_grid(0, 2, data);
  const auto info = fc::compose_info_grid(data, label);
  ASSERT_EQ(info.cells.rows(), 96u);
  ASSERT_EQ(info.cells.cols(), 104u);
  const auto [d, l] = fc::split_info_grid(info, spec);
  EXPECT_EQ(d, data);
  EXPECT_EQ(l, label.cells);

  const fc::SymbolGrid ends(96, 96, Symbol::end);
  const auto end_info = fc::compose_info_grid(ends, fc::build_label_grid(0, 1, ends));
  for (std::size_t r = 0; r < 96; ++r)
    for (std::size_t c = 0; c < 96; ++c) EXPECT_EQ(end_info.cells(r, c), Symbol::end);
}

TEST(Framing, ComposeRejectsMismatchedShapes) {
  const fc::SymbolGrid data(96, 96, Symbol::zero);
  const fc::LabelGrid short_label{fc::SymbolGrid(95, 8, Symbol::zero)};
  EXPECT_THROW(fc::compose_info_grid(data, short_label), fc::codec_error);
  const fc::InfoGrid wrong{fc::SymbolGrid(96, 100)};
  EXPECT_THROW(fc::split_info_grid(wrong, fc::CodecSpec{}), fc::codec_error);
}
