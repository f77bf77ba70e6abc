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

// Robustness sweep over a grid of channel settings. Writes one CSV row per
// grid point.

#include <fstream>
#include <iostream>
#include <random>
#include <vector>

#include "CLI11.hpp"
#include "frame_courier/frame_courier.hpp"

namespace fc = frame_courier;

int main(int argc, char** argv) {
  CLI::App app{"Sweep channel settings and report decode success rates"};
  std::uint64_t size = 16384;
  std::uint32_t trials = 5;
  std::uint64_t seed = 7;
  std::vector<std::uint32_t> noise{0, 30, 60};
  std::vector<double> drop{0.0, 0.05, 0.15};
  std::string output;
  app.add_option("--size", size, "payload bytes")->capture_default_str();
  app.add_option("--trials", trials, "trials per grid point")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--seed", seed, "base seed")->capture_default_str();
  app.add_option("--noise", noise, "noise amplitudes")->delimiter(',');
  app.add_option("--drop", drop, "drop probabilities")->delimiter(',');
  app.add_option("-o,--output", output, "CSV path (default stdout)");
  CLI11_PARSE(app, argc, argv);

  std::mt19937_64 rng(seed);
  std::vector<std::uint8_t> payload(size);
  for (auto& b : payload) b = static_cast<std::uint8_t>(rng());

  std::vector<fc::ChannelConfig> grid;
  for (bool blur : {false, true}) {
    for (auto n : noise) {
      for (auto d : drop) {
        fc::ChannelConfig cfg;
        cfg.noise_amplitude = n;
        cfg.drop_probability = d;
        cfg.blur = blur ? fc::BlurKind::box3 : fc::BlurKind::none;
        cfg.canvas_margin = 40;
        cfg.seed = seed;
        grid.push_back(cfg);
      }
    }
  }

  try {
    const auto rows = fc::sweep(payload, fc::CodecSpec{}, grid, trials);
    std::cerr << "config_id: blur,noise,drop\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
      std::cerr << "  " << i << ": " << (grid[i].blur == fc::BlurKind::box3) << ',' << grid[i].noise_amplitude
                << ',' << grid[i].drop_probability << '\n';
    }
    if (output.empty()) {
      fc::write_sweep_csv(rows, std::cout);
    } else {
      fc::write_file_atomically(output, [&](std::ostream& out) { fc::write_sweep_csv(rows, out); });
    }
  } catch (const fc::codec_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
