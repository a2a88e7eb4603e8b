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

#include <optional>
#include <span>
#include <vector>

namespace dcasim {

/// One time-sharing mode: the users served together and the time fraction.
/// `coherence` holds one block length per user in the mode.
struct TimeShareMode {
    std::vector<int> coherence;
    double fraction = 0.0;
};

/// Degrees of freedom left after training N_s users in a block of T_c
/// channel uses: max(0, (T_c - N_s) / T_c) * min(M, N_s). An empty
/// `antennas` means an unbounded array.
double training_dof(double coherence, int num_scheduled, std::optional<int> antennas = std::nullopt);

/// Sum rate of mode `mode` if it were used all the time, with unit per-user
/// rates: |U| * max(0, 1 - [|U| > 1] * sum 1/T_n).
double mode_rate(const TimeShareMode& mode);

/// sum_i p_i * mode_rate(mode_i). Fractions must sum to 1.
double timeshare_sum_rate(std::span<const TimeShareMode> modes);

} // namespace dcasim
