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
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bitstream.hpp"
#include "codec_spec.hpp"
#include "errors.hpp"
#include "framing.hpp"
#include "locate.hpp"
#include "parallel.hpp"
#include "raster.hpp"
#include "videoio.hpp"

namespace frame_courier {

struct DecodeReport {
  std::uint64_t frames_scanned = 0;
  std::uint64_t containers_found = 0;
  std::uint64_t parity_passed = 0;
  std::uint64_t parity_failed = 0;
  std::uint64_t duplicates_merged = 0;
  std::uint64_t frames_repaired = 0;
  std::optional<std::uint32_t> voted_total;
  std::vector<std::uint32_t> missing_indices;
  std::uint64_t recovered_bytes = 0;

  bool success() const { return voted_total.has_value() && missing_indices.empty(); }
};

/// Decode failure that still carries the diagnostics. The code is
/// incomplete_recovery or corrupt_payload.
class recovery_error : public codec_error {
 public:
  recovery_error(errc code, const std::string& what, DecodeReport report)
      : codec_error(code, what), report_(std::move(report)) {}

  const DecodeReport& report() const noexcept { return report_; }

 private:
  DecodeReport report_;
};

struct DecodeResult {
  std::vector<std::uint8_t> bytes;
  DecodeReport report;
};

inline void check_encodable(std::uint64_t byte_count, const CodecSpec& spec) {
  if (byte_count > UINT64_MAX / 8 || frame_count_for_bits(byte_count * 8, spec) > UINT32_MAX) {
    throw codec_error(errc::file_too_large, std::to_string(byte_count) + " bytes need more than 2^32-1 frames");
  }
}

/// One container frame per data frame, in index order.
inline std::vector<PixelFrame> encode_containers(std::span<const std::uint8_t> payload, const CodecSpec& spec) {
  spec.validate();
  check_encodable(payload.size(), spec);
  const auto frames = chunk_to_frames(bytes_to_symbols(payload), spec);
  std::vector<PixelFrame> containers(frames.size());
  parallel_for(frames.size(), [&](std::size_t i) {
    const auto& f = frames[i];
    containers[i] = render_container(compose_info_grid(f, build_label_grid(f)), spec);
  });
  return containers;
}

inline FrameSequence encode_file(std::span<const std::uint8_t> payload, const CodecSpec& spec) {
  const auto containers = encode_containers(payload, spec);
  return schedule_frames(containers, spec);
}

/// Per-frame decode front end result.
struct FrameScan {
  bool container_found = false;
  std::optional<FrameCandidate> candidate;
};

/// Locates the container on the denoised binary image, then samples the
/// block cores of the raw frame so blur at block edges does not bias them.
inline FrameScan scan_frame(const PixelFrame& frame, const CodecSpec& spec) {
  FrameScan scan;
  const auto box = find_container(denoise_binarize(frame), spec);
  if (!box) return scan;
  scan.container_found = true;
  PixelFrame content;
  try {
    content = normalize_region(frame, *box, spec);
  } catch (const codec_error& e) {
    if (e.code() != errc::degenerate_box) throw;
    return scan;
  }
  const InfoGrid info{quantize_grid(mean_pool(content, spec, spec.pool_inset))};
  scan.candidate = parse_info_grid(info, spec);
  return scan;
}

/// END placement rule for a frame at index of total: only the last frame
/// holds END cells, and there they form a non-empty row-major suffix.
inline bool frame_structure_ok(const SymbolGrid& data, std::uint32_t index, std::uint32_t total) {
  auto cells = data.cells();
  const auto first_end = std::find(cells.begin(), cells.end(), Symbol::end);
  if (index + 1 < total) return first_end == cells.end();
  if (first_end == cells.end()) return false;
  return std::all_of(first_end, cells.end(), [](Symbol s) { return s == Symbol::end; });
}

struct Reconciliation {
  std::uint32_t total = 0;
  std::vector<DataFrameGrid> frames;  // resolved frames, ascending index
  std::vector<std::uint32_t> missing;
  std::uint64_t duplicates_merged = 0;
  std::uint64_t repaired = 0;
};

namespace detail {

inline std::optional<std::uint32_t> strict_majority(const std::map<std::uint32_t, std::size_t>& counts,
                                                    std::size_t voters) {
  for (const auto& [value, n] : counts) {
    if (2 * n > voters) return value;
  }
  return std::nullopt;
}

/// Cellwise plurality; ties go to the earliest candidate holding a tied value.
inline InfoGrid majority_grid(const std::vector<const FrameCandidate*>& group) {
  InfoGrid out{group.front()->info.cells};
  auto dst = out.cells.cells();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    std::array<std::size_t, 3> counts{};
    for (const auto* c : group) ++counts[static_cast<std::size_t>(c->info.cells.cells()[i])];
    const std::size_t best = *std::max_element(counts.begin(), counts.end());
    for (const auto* c : group) {
      const Symbol s = c->info.cells.cells()[i];
      if (counts[static_cast<std::size_t>(s)] == best) {
        dst[i] = s;
        break;
      }
    }
  }
  return out;
}

}  // namespace detail

/// Merges candidates into one validated data frame per index.
///
/// The total is the strict majority among parity-valid candidates (or among
/// all candidates when none is valid). Within an index the earliest valid
/// candidate wins; otherwise a cellwise majority across the copies is tried
/// and kept only if it passes parity.
inline Reconciliation reconcile_candidates(std::span<const FrameCandidate> candidates, const CodecSpec& spec) {
  std::map<std::uint32_t, std::size_t> valid_totals, all_totals;
  std::size_t valid_voters = 0, all_voters = 0;
  for (const auto& c : candidates) {
    if (!c.voted_total) continue;
    ++all_totals[*c.voted_total];
    ++all_voters;
    if (c.parity_ok) {
      ++valid_totals[*c.voted_total];
      ++valid_voters;
    }
  }
  const auto total = valid_voters > 0 ? detail::strict_majority(valid_totals, valid_voters)
                                      : detail::strict_majority(all_totals, all_voters);
  if (!total || *total == 0) throw codec_error(errc::no_consistent_total, "frame totals disagree");

  Reconciliation out;
  out.total = *total;
  std::map<std::uint32_t, std::vector<const FrameCandidate*>> groups;
  for (const auto& c : candidates) {
    if (c.voted_index && c.voted_total == total && *c.voted_index < *total) groups[*c.voted_index].push_back(&c);
  }

  auto accept = [&](const FrameCandidate& c, std::uint32_t index) -> std::optional<DataFrameGrid> {
    if (!c.parity_ok || c.voted_index != index || c.voted_total != total) return std::nullopt;
    auto data = column_slice(c.info.cells, 0, spec.data_cols);
    if (!frame_structure_ok(data, index, *total)) return std::nullopt;
    return DataFrameGrid{std::move(data), index, *total};
  };

  std::uint32_t expected = 0;
  for (const auto& [index, group] : groups) {
    for (; expected < index; ++expected) out.missing.push_back(expected);
    expected = index + 1;
    std::optional<DataFrameGrid> chosen;
    for (const auto* c : group) {
      if ((chosen = accept(*c, index))) break;
    }
    if (!chosen && group.size() >= 2) {
      if ((chosen = accept(parse_info_grid(detail::majority_grid(group), spec), index))) ++out.repaired;
    }
    if (!chosen) {
      out.missing.push_back(index);
      continue;
    }
    out.duplicates_merged += group.size() - 1;
    out.frames.push_back(std::move(*chosen));
  }
  for (; expected < *total; ++expected) out.missing.push_back(expected);
  return out;
}

/// Incremental decoder: feed frames in scan order, then finish().
class Decoder {
 public:
  explicit Decoder(CodecSpec spec) : spec_(spec) {
    spec_.validate();
    batch_limit_ = 4 * static_cast<std::size_t>(worker_count());
  }

  void feed(const PixelFrame& frame) {
    const bool repeat = have_previous_ && previous_ == frame;
    pending_.push_back({frame, repeat});
    previous_ = frame;
    have_previous_ = true;
    if (pending_.size() >= batch_limit_) flush();
  }

  /// Reconciles everything fed so far. Throws recovery_error on failure.
  DecodeResult finish() {
    flush();
    DecodeResult result;
    result.report = report_;
    auto& report = result.report;

    Reconciliation rec;
    try {
      rec = reconcile_candidates(candidates_, spec_);
    } catch (const codec_error& e) {
      if (e.code() != errc::no_consistent_total) throw;
      throw recovery_error(errc::incomplete_recovery, "no consistent frame total among candidates", report);
    }
    report.voted_total = rec.total;
    report.missing_indices = rec.missing;
    report.duplicates_merged = rec.duplicates_merged;
    report.frames_repaired = rec.repaired;
    if (!rec.missing.empty()) {
      throw recovery_error(errc::incomplete_recovery,
                           std::to_string(rec.missing.size()) + " of " + std::to_string(rec.total) + " frames missing",
                           report);
    }

    const auto symbols = flatten_frames(rec.frames);
    const auto first_end = std::find(symbols.begin(), symbols.end(), Symbol::end);
    if (first_end == symbols.end() ||
        !std::all_of(first_end, symbols.end(), [](Symbol s) { return s == Symbol::end; })) {
      throw recovery_error(errc::corrupt_payload, "payload is not followed by a clean END suffix", report);
    }
    try {
      result.bytes = symbols_to_bytes(symbols).bytes;
    } catch (const codec_error& e) {
      throw recovery_error(errc::corrupt_payload, e.what(), report);
    }
    report.recovered_bytes = result.bytes.size();
    return result;
  }

  const DecodeReport& progress() const { return report_; }

 private:
  struct Pending {
    PixelFrame frame;
    bool repeats_previous;
  };

  void flush() {
    std::vector<FrameScan> scans(pending_.size());
    std::vector<std::size_t> work;
    for (std::size_t i = 0; i < pending_.size(); ++i) {
      if (!pending_[i].repeats_previous) work.push_back(i);
    }
    parallel_for(work.size(), [&](std::size_t k) { scans[work[k]] = scan_frame(pending_[work[k]].frame, spec_); });
    for (std::size_t i = 0; i < pending_.size(); ++i) {
      if (pending_[i].repeats_previous) {
        scans[i] = last_scan_;
      } else {
        last_scan_ = scans[i];
      }
      const auto& scan = scans[i];
      ++report_.frames_scanned;
      if (scan.container_found) ++report_.containers_found;
      if (scan.candidate) {
        ++(scan.candidate->parity_ok ? report_.parity_passed : report_.parity_failed);
        candidates_.push_back(*scan.candidate);
      }
    }
    pending_.clear();
  }

  CodecSpec spec_;
  std::size_t batch_limit_;
  std::vector<Pending> pending_;
  PixelFrame previous_;
  bool have_previous_ = false;
  FrameScan last_scan_;
  std::vector<FrameCandidate> candidates_;
  DecodeReport report_;
};

inline DecodeResult decode_sequence(const FrameSequence& seq, const CodecSpec& spec) {
  Decoder decoder(spec);
  for (const auto& f : seq.frames) decoder.feed(f);
  return decoder.finish();
}

}  // namespace frame_courier
