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

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "dcasim/config.hpp"
#include "dcasim/queueing.hpp"
#include "dcasim/scheduling.hpp"

namespace dcasim {

/// Backlog slope (bits/slot) below which a run counts as stable.
inline constexpr double kStabilitySlopeThreshold = 1e-3;

struct FrameRecord {
    std::int64_t frame_index = 0;
    Slot t_start = 0;
    int frame_len = 1;
    Mode mode = Mode::idle;
    std::vector<int> users;
    std::vector<double> allocated_bits;  // aligned with users
    std::vector<double> served_bits;     // aligned with users
    double objective = 0.0;
};

/// Per-slot backlog and head-of-line delay, row-major (slot, user).
/// Within a frame the queue content is the frame-start content; service and
/// arrivals take effect at the frame boundary.
struct SlotTrace {
    using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

    int num_users = 0;
    std::vector<double> backlog;
    std::vector<double> hol;

    Slot size() const { return num_users == 0 ? 0 : static_cast<Slot>(backlog.size()) / num_users; }
    Eigen::Map<const RowMatrix> backlog_matrix() const { return {backlog.data(), size(), num_users}; }
    Eigen::Map<const RowMatrix> hol_matrix() const { return {hol.data(), size(), num_users}; }

    /// Running mean of user n's head-of-line delay after each slot.
    std::vector<double> time_average_delay(int user) const;
    std::vector<double> total_backlog() const;
};

struct RunSummary {
    Slot total_slots = 0;
    std::int64_t frames = 0;
    std::int64_t degenerate_frames = 0;
    double sum_rate = 0.0;
    std::optional<double> admitted_rate;
    double stability_slope = 0.0;
    bool stable = true;

    std::vector<double> avg_delay;
    std::vector<double> mean_queue;
    std::vector<double> arrived_bits;
    std::vector<double> served_bits;
    std::vector<double> final_backlog;

    double total_arrived() const;
    double total_served() const;
    double total_final_backlog() const;
    double mean_delay() const;
};

struct RunResult {
    std::vector<FrameRecord> frames;
    SlotTrace trace;
    RunSummary summary;
};

/// Least-squares slope of `y` against its index.
double least_squares_slope(std::span<const double> y);

/// Frame-by-frame simulation until at least `horizon_slots` channel uses
/// have elapsed. Deterministic in the config (including its seed).
RunResult run_simulation(const RunConfig& config);

/// Time-average admitted bits per slot under the admission rule (V, W_max),
/// which replaces the configured arrival process.
double estimate_capacity(RunConfig config, double threshold, double grant);

struct SweepRow {
    double value = 0.0;
    RunSummary summary;
};

/// One independent run per axis value, ordered by value. Run i (after
/// ordering) uses a seed derived from the master seed and i.
std::vector<SweepRow> sweep(const RunConfig& base, std::string_view axis, std::vector<double> values,
                            unsigned workers = 1);

} // namespace dcasim
