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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dcasim/channel.hpp"
#include "dcasim/scheduling.hpp"

namespace dcasim {

/// Virtual-arrival admission rule: before each frame every queue below
/// `threshold` bits is granted `grant` bits, others get nothing.
struct AdmissionControl {
    double threshold = 0.0;  // V
    double grant = 0.0;      // W_max

    void validate() const;
};

/// Everything one simulation run needs.
struct RunConfig {
    int antennas = 10;
    double snr_db = 15.0;
    RadioParams radio;
    ChannelModel channel_model = ChannelModel::rayleigh;
    std::vector<UserProfile> users;
    double packet_bits = 3.0;
    PolicyConfig policy;
    std::int64_t horizon_slots = 20000;
    std::uint64_t seed = 1;
    std::optional<AdmissionControl> admission;
    std::filesystem::path output_dir = "out";

    int num_users() const { return static_cast<int>(users.size()); }
    double total_power() const { return 1.0; }
    double noise_var() const;
    std::vector<int> coherence() const;
    LinkParams link() const;

    /// Throws ConfigError naming the offending key.
    void validate() const;
};

using Override = std::pair<std::string, std::string>;

/// Parses "section.key=value".
Override parse_override(std::string_view text);

/// Reads an INI-style config ([system], [users], [policy], [admission],
/// [output]) and applies `overrides` on top.
RunConfig load_config(const std::filesystem::path& path, const std::vector<Override>& overrides = {});
RunConfig parse_config(std::string_view text, const std::vector<Override>& overrides = {});

/// Sets a numeric field by key (full "section.key" or a short alias such as
/// M, T, theta, K, V). Used by parameter sweeps.
void set_numeric(RunConfig& config, std::string_view key, double value);

/// Default admission rule: V = 100 * lambda * T_max, W_max = V, with lambda
/// the largest per-user arrival rate.
AdmissionControl default_admission(const RunConfig& config);

} // namespace dcasim
