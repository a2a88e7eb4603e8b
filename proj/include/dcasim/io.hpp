// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The dcasim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dcasim/config.hpp"
#include "dcasim/engine.hpp"

namespace dcasim {

// Output files. Users are numbered from 1 in every file.
//
//   frames.csv  frame_index,t_start,frame_len,mode,scheduled_users,alloc_bits,served_bits
//               (list columns are ';'-joined and aligned with scheduled_users)
//   queues.csv  slot,q_1..q_N,hol_1..hol_N
//   summary.txt key=value lines
//
// Floating-point values carry 12 significant digits.

inline constexpr std::string_view kFramesHeader =
    "frame_index,t_start,frame_len,mode,scheduled_users,alloc_bits,served_bits";

std::string format_number(double value);

/// Writes `content` to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string frames_csv(std::span<const FrameRecord> frames);
std::string queues_csv(const SlotTrace& trace);
std::string summary_text(const RunConfig& config, const RunSummary& summary);
std::string sweep_csv(std::string_view axis, std::span<const SweepRow> rows);

std::vector<FrameRecord> parse_frames_csv(std::string_view text);
SlotTrace parse_queues_csv(std::string_view text);
std::map<std::string, std::string> parse_summary(std::string_view text);

/// frames.csv, queues.csv and summary.txt under `dir` (created if missing).
void write_run_outputs(const std::filesystem::path& dir, const RunConfig& config, const RunResult& result);

std::string read_file(const std::filesystem::path& path);

} // namespace dcasim
