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

#include "frame_courier/locate.hpp"

#include <gtest/gtest.h>

#include <random>

#include "frame_courier/framing.hpp"
#include "test_support.hpp"

namespace fc = frame_courier;
using fc::Symbol;

namespace {

fc::PixelFrame random_frame(std::mt19937_64& rng, std::uint32_t w, std::uint32_t h) {
  std::vector<std::uint8_t> s(static_cast<std::size_t>(w) * h);
  for (auto& v : s) v = static_cast<std::uint8_t>(rng());
  return {w, h, std::move(s)};
}

fc::InfoGrid random_info(std::mt19937_64& rng, const fc::CodecSpec& spec) {
  fc::SymbolGrid data(spec.data_rows, spec.data_cols);
  for (auto& s : data.cells()) s = static_cast<Symbol>(rng() % 2);
  for (std::size_t i = data.size() - rng() % 3000; i < data.size(); ++i) data.cells()[i] = Symbol::end;
  return fc::compose_info_grid(data, fc::build_label_grid(0, 1, data));
}

// Sorting oracle for the 3x3 median with replicated edges.
std::uint8_t oracle_median(const fc::PixelFrame& f, int x, int y) {
  std::vector<std::uint8_t> w;
  for (int dy = -1; dy <= 1; ++dy)
    for (int dx = -1; dx <= 1; ++dx) {
      const int xx = std::clamp(x + dx, 0, static_cast<int>(f.width()) - 1);
      const int yy = std::clamp(y + dy, 0, static_cast<int>(f.height()) - 1);
      w.push_back(f.at(xx, yy));
    }
  std::sort(w.begin(), w.end());
  return w[4];
}

// Flood-fill oracle for 8-connected white component bounding boxes.
std::vector<fc::RegionBox> oracle_boxes(const fc::PixelFrame& b) {
  const int w = static_cast<int>(b.width()), h = static_cast<int>(b.height());
  std::vector<int> seen(static_cast<std::size_t>(w) * h, 0);
  std::vector<fc::RegionBox> boxes;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      if (!b.at(x, y) || seen[y * w + x]) continue;
      int x0 = x, x1 = x, y0 = y, y1 = y;
      std::vector<std::pair<int, int>> stack{{x, y}};
      seen[y * w + x] = 1;
      while (!stack.empty()) {
        auto [cx, cy] = stack.back();
        stack.pop_back();
        x0 = std::min(x0, cx), x1 = std::max(x1, cx), y0 = std::min(y0, cy), y1 = std::max(y1, cy);
        for (int dy = -1; dy <= 1; ++dy)
          for (int dx = -1; dx <= 1; ++dx) {
            const int nx = cx + dx, ny = cy + dy;
            if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
            if (!b.at(nx, ny) || seen[ny * w + nx]) continue;
            seen[ny * w + nx] = 1;
            stack.push_back({nx, ny});
          }
      }
      boxes.push_back({static_cast<std::uint32_t>(x0), static_cast<std::uint32_t>(y0),
                       static_cast<std::uint32_t>(x1 - x0 + 1), static_cast<std::uint32_t>(y1 - y0 + 1)});
    }
  return boxes;
}

bool box_less(const fc::RegionBox& a, const fc::RegionBox& b) {
  return std::tie(a.top, a.left, a.width, a.height) < std::tie(b.top, b.left, b.width, b.height);
}

}  // namespace

TEST(Median, ConstantAndImpulse) {
  const fc::PixelFrame flat(9, 7, 77);
  EXPECT_EQ(fc::median_denoise(flat), flat);
  fc::PixelFrame impulse(9, 7, 0);
  impulse.mutable_samples()[3 * 9 + 4] = 255;
  EXPECT_EQ(fc::median_denoise(impulse), fc::PixelFrame(9, 7, 0));
}

TEST(Median, WindowFromCompressionArtifact) {
  // 3x3 frame holding one artifact window; the centre median is the 5th order statistic.
  const fc::PixelFrame f(3, 3, std::vector<std::uint8_t>{0, 0, 0, 0, 17, 248, 255, 255, 255});
  EXPECT_EQ(fc::median_denoise(f).at(1, 1), 17);
  EXPECT_EQ(oracle_median(f, 1, 1), 17);
}

TEST(Median, MatchesSortingOracle) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 6; ++t) {
    const auto f = random_frame(rng, 13 + t, 11 + 2 * t);
    const auto m = fc::median_denoise(f);
    for (std::uint32_t y = 0; y < f.height(); ++y)
      for (std::uint32_t x = 0; x < f.width(); ++x) ASSERT_EQ(m.at(x, y), oracle_median(f, x, y));
  }
}

TEST(Binarize, ThresholdAndIdempotence) {
  const fc::PixelFrame f(2, 1, std::vector<std::uint8_t>{127, 128});
  const auto b = fc::binarize(f);
  EXPECT_EQ(b.at(0, 0), 0);
  EXPECT_EQ(b.at(1, 0), 255);
  EXPECT_EQ(fc::binarize(fc::PixelFrame(5, 5, 0)), fc::PixelFrame(5, 5, 0));
  std::mt19937_64 rng(1);
  const auto r = random_frame(rng, 20, 20);
  EXPECT_EQ(fc::binarize(fc::binarize(r)), fc::binarize(r));
}

TEST(Binarize, FusedPathEqualsMedianThenThreshold) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 10; ++t) {
    auto f = random_frame(rng, 31 + t, 17 + t);
    if (t % 2) {
      // Values clustered around the threshold stress ties.
      for (auto& v : f.mutable_samples()) v = static_cast<std::uint8_t>(126 + v % 4);
    }
    EXPECT_EQ(fc::denoise_binarize(f), fc::binarize(fc::median_denoise(f)));
  }
}

TEST(Components, MatchFloodFillOracle) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 20; ++t) {
    auto f = random_frame(rng, 40, 30);
    for (auto& v : f.mutable_samples()) v = (v % 100) < 35 + t ? 255 : 0;
    auto got = fc::white_component_boxes(f);
    auto want = oracle_boxes(f);
    std::sort(got.begin(), got.end(), box_less);
    std::sort(want.begin(), want.end(), box_less);
    ASSERT_EQ(got, want) << "trial " << t;
  }
}

TEST(Locate, CenteredContainerInLargeField) {
  const fc::CodecSpec spec;
  std::mt19937_64 rng(5);
  const auto container = fc::render_container(random_info(rng, spec), spec);
  const std::uint32_t left = (1920 - 570) / 2, top = (1080 - 530) / 2;
  const auto frame = fc_test::embed(container, 1920, 1080, left, top);
  const auto box = fc::locate_container(fc::binarize(fc::median_denoise(frame)), spec);
  EXPECT_EQ(box, (fc::RegionBox{left + 15, top + 15, 540, 500}));

  const auto shifted = fc_test::embed(container, 1920, 1080, left + 37, top - 21);
  const auto box2 = fc::locate_container(fc::denoise_binarize(shifted), spec);
  EXPECT_EQ(box2, (fc::RegionBox{left + 15 + 37, top + 15 - 21, 540, 500}));
}

TEST(Locate, TranslationEquivariance) {
  const fc::CodecSpec spec;
  std::mt19937_64 rng(6);
  const auto container = fc::render_container(random_info(rng, spec), spec);
  for (int t = 0; t < 8; ++t) {
    const std::uint32_t left = rng() % 100, top = rng() % 100;
    const auto frame = fc_test::embed(container, 700, 660, left, top);
    EXPECT_EQ(fc::locate_container(fc::denoise_binarize(frame), spec), (fc::RegionBox{left + 15, top + 15, 540, 500}));
  }
}

TEST(Locate, BlackFrameHasNoContainer) {
  const fc::CodecSpec spec;
  try {
    fc::locate_container(fc::PixelFrame(800, 600, 0), spec);
    FAIL();
  } catch (const fc::codec_error& e) {
    EXPECT_EQ(e.code(), fc::errc::container_not_found);
  }
  // A white desktop is one huge component with the wrong aspect ratio.
  EXPECT_FALSE(fc::find_container(fc::PixelFrame(1920, 1080, 255), spec).has_value());
}

TEST(Normalize, NativeScaleIsIdentity) {
  const fc::CodecSpec spec;
  std::mt19937_64 rng(7);
  const auto info = random_info(rng, spec);
  const auto frame = fc_test::embed(fc::render_container(info, spec), 800, 700, 61, 33);
  const auto box = fc::locate_container(fc::denoise_binarize(frame), spec);
  const auto content = fc::normalize_region(frame, box, spec);
  EXPECT_EQ(content, fc::scale_up(info, spec));
  EXPECT_EQ(fc::quantize_grid(fc::mean_pool(content, spec)), info.cells);
}

TEST(Normalize, ScaledRecordingsRecoverSymbols) {
  const fc::CodecSpec spec;
  std::mt19937_64 rng(8);
  const auto info = random_info(rng, spec);
  const auto container = fc::render_container(info, spec);
  for (double factor : {0.8, 1.25, 1.5}) {
    const auto scaled = fc_test::bilinear_scale(container, factor);
    const auto frame = fc_test::embed(scaled, scaled.width() + 200, scaled.height() + 160, 90, 70);
    const auto box = fc::locate_container(fc::denoise_binarize(frame), spec);
    EXPECT_NEAR(box.width, 540 * factor, 2.0) << factor;
    EXPECT_NEAR(box.height, 500 * factor, 2.0) << factor;
    const auto content = fc::normalize_region(frame, box, spec);
    EXPECT_EQ(fc::quantize_grid(fc::mean_pool(content, spec, spec.pool_inset)), info.cells) << factor;
  }
}

TEST(Normalize, DegenerateBoxThreshold) {
  const fc::CodecSpec spec;
  const fc::PixelFrame frame(600, 600, 0);
  EXPECT_NO_THROW(fc::normalize_region(frame, {0, 0, 108, 100}, spec));
  try {
    fc::normalize_region(frame, {0, 0, 107, 100}, spec);
    FAIL();
  } catch (const fc::codec_error& e) {
    EXPECT_EQ(e.code(), fc::errc::degenerate_box);
  }
  EXPECT_THROW(fc::normalize_region(frame, {0, 0, 108, 99}, spec), fc::codec_error);
}

TEST(Normalize, AreaResampleAveragesCoveredSamples) {
  // 4x2 -> 2x1 averages 2x2 blocks; 3 -> 2 splits the middle sample.
  const fc::PixelFrame f(4, 2, std::vector<std::uint8_t>{0, 100, 200, 40, 20, 60, 0, 0});
  const auto r = fc::resample_area(f, {0, 0, 4, 2}, 2, 1);
  EXPECT_EQ(r.at(0, 0), 45);
  EXPECT_EQ(r.at(1, 0), 60);
  const fc::PixelFrame g(3, 1, std::vector<std::uint8_t>{0, 90, 30});
  const auto q = fc::resample_area(g, {0, 0, 3, 1}, 2, 1);
  EXPECT_EQ(q.at(0, 0), 30);  // (0 + 0.5 * 90) / 1.5
  EXPECT_EQ(q.at(1, 0), 50);  // (0.5 * 90 + 30) / 1.5
}
