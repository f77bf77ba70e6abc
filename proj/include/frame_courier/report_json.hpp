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

#include <string>

#include "json.hpp"
#include "pipeline.hpp"

namespace frame_courier {

inline nlohmann::json report_to_json(const DecodeReport& r) {
  nlohmann::json j;
  j["frames_scanned"] = r.frames_scanned;
  j["containers_found"] = r.containers_found;
  j["parity_passed"] = r.parity_passed;
  j["parity_failed"] = r.parity_failed;
  j["duplicates_merged"] = r.duplicates_merged;
  j["frames_repaired"] = r.frames_repaired;
  j["voted_total"] = r.voted_total ? nlohmann::json(*r.voted_total) : nlohmann::json(nullptr);
  j["missing_indices"] = r.missing_indices;
  j["recovered_bytes"] = r.recovered_bytes;
  j["success"] = r.success();
  return j;
}

/// Human-readable multi-line summary.
inline std::string report_to_text(const DecodeReport& r) {
  std::string s;
  s += "frames scanned:    " + std::to_string(r.frames_scanned) + "\n";
  s += "containers found:  " + std::to_string(r.containers_found) + "\n";
  s += "parity passed:     " + std::to_string(r.parity_passed) + "\n";
  s += "parity failed:     " + std::to_string(r.parity_failed) + "\n";
  s += "duplicates merged: " + std::to_string(r.duplicates_merged) + "\n";
  s += "frames repaired:   " + std::to_string(r.frames_repaired) + "\n";
  s += "voted total:       " + (r.voted_total ? std::to_string(*r.voted_total) : std::string("none")) + "\n";
  s += "missing indices:   ";
  if (r.missing_indices.empty()) s += "none";
  for (std::size_t i = 0; i < r.missing_indices.size(); ++i) {
    if (i == 32) {
      s += " ... (" + std::to_string(r.missing_indices.size()) + " total)";
      break;
    }
    s += (i ? "," : "") + std::to_string(r.missing_indices[i]);
  }
  s += "\nrecovered bytes:   " + std::to_string(r.recovered_bytes) + "\n";
  return s;
}

}  // namespace frame_courier
