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

#include <stdexcept>
#include <string>

namespace frame_courier {

enum class errc {
  prefix_not_byte_aligned,
  index_out_of_range,
  shape_mismatch,
  empty_input,
  io_failure,
  malformed_header,
  truncated_frame,
  container_not_found,
  degenerate_box,
  file_too_large,
  incomplete_recovery,
  corrupt_payload,
  no_consistent_total,
  invalid_spec,
};

inline const char* errc_name(errc code) {
  switch (code) {
    case errc::prefix_not_byte_aligned: return "PrefixNotByteAligned";
    case errc::index_out_of_range: return "IndexOutOfRange";
    case errc::shape_mismatch: return "ShapeMismatch";
    case errc::empty_input: return "EmptyInput";
    case errc::io_failure: return "IoFailure";
    case errc::malformed_header: return "MalformedHeader";
    case errc::truncated_frame: return "TruncatedFrame";
    case errc::container_not_found: return "ContainerNotFound";
    case errc::degenerate_box: return "DegenerateBox";
    case errc::file_too_large: return "FileTooLarge";
    case errc::incomplete_recovery: return "IncompleteRecovery";
    case errc::corrupt_payload: return "CorruptPayload";
    case errc::no_consistent_total: return "NoConsistentTotal";
    case errc::invalid_spec: return "InvalidSpec";
  }
  return "Unknown";
}

/// Base of every error raised by the library. The code identifies the
/// failure class; the message carries the details.
class codec_error : public std::runtime_error {
 public:
  codec_error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace frame_courier
