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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dcasim/channel.hpp"

namespace dcasim {

enum class Mode { idle, sm, stc };

enum class PolicyKind { gap, tdca, pldca, qqs, tqqs, plqqs, tdma, full_sm, random_k };

std::string_view to_string(Mode mode);
std::string_view to_string(PolicyKind kind);
PolicyKind parse_policy_kind(std::string_view name);

/// Which scheduler runs and its knobs.
///
/// `theta` only applies to the power-law variants and `reschedule_period`
/// only to the T-frame variants; the plain rules always use 1 for both.
/// `t_stc` = 0 means "use the scheduled user's own block length".
struct PolicyConfig {
    PolicyKind kind = PolicyKind::gap;
    int theta = 3;
    int reschedule_period = 1;
    int num_groups = 2;
    int t_stc = 0;
    int k_random = 10;
    int subset_limit = 12;

    void validate() const;
    int effective_theta() const;
    int effective_period() const;
    bool uses_genie() const;
    bool is_qqs_family() const;
};

struct LinkParams {
    int antennas = 1;
    double total_power = 1.0;
    double noise_var = 1.0;
    int t_stc = 0;
};

/// Output of one scheduling step. `allocated_bits` is aligned with `users`.
struct SchedulingDecision {
    std::vector<int> users;
    Mode mode = Mode::idle;
    int frame_len = 1;
    std::vector<double> allocated_bits;
    double objective = 0.0;
    bool degenerate = false;

    static SchedulingDecision idle();
};

/// STC frame length: the user's block length, capped at `t_stc` when set.
int stc_frame_len(int coherence, int t_stc);

/// Queue weights Q^theta.
std::vector<double> queue_weights(std::span<const double> queues, int theta);

/// Allocated bits, frame length and drift term sum w_n beta_n / T_k for
/// transmitting to `users`. Row i of `gains` belongs to users[i]; `weights`
/// and `coherence` are indexed by user id. A multi-user set whose block is
/// consumed by training gets zero bits without touching the precoder.
SchedulingDecision evaluate_set(std::span<const int> users, const ComplexMatrix<double>& gains,
                                std::span<const double> weights, std::span<const int> coherence,
                                const LinkParams& link);

/// Genie-aided drift maximization over every nonempty subset of users.
/// Ties go to the smaller set, then to the lexicographically smaller one.
SchedulingDecision gap_decide(std::span<const double> queues, std::span<const int> coherence,
                              const ComplexMatrix<double>& genie, const LinkParams& link,
                              int theta = 1, int subset_limit = 12);

// ---------------------------------------------------------------------------
// Quantized-block-length heuristic

/// Users binned by block length into K groups with half-open bins
/// ((k-1)/K Tmax, k/K Tmax]. Group k is at index k-1; groups may be empty.
std::vector<std::vector<int>> quantize_groups(std::span<const int> coherence, int num_groups);

/// Score (1 - len / mean_coherence) * sum of the first `len` weights.
double prefix_score(std::span<const double> sorted_weights, std::size_t len, double mean_coherence);

/// Greedy prefix length: grow while adding the next user increases the score.
std::size_t greedy_prefix_length(std::span<const double> sorted_weights, double mean_coherence);

struct GroupSelection {
    std::vector<int> users;  // sorted by descending weight
    double score = 0.0;
    double mean_coherence = 0.0;
    bool single = false;
};

/// Per-group selection (greedy prefix, then singleton comparison).
GroupSelection select_in_group(std::span<const int> group, std::span<const double> weights,
                               std::span<const int> coherence);

/// Channel-blind set selection; empty result means idle.
std::vector<int> qqs_select(std::span<const double> queues, std::span<const int> coherence,
                            int num_groups, int theta = 1);

SchedulingDecision qqs_decide(std::span<const double> queues, std::span<const int> coherence,
                              int num_groups, int theta, FrameChannel& channel, const LinkParams& link);

// ---------------------------------------------------------------------------
// Stateful policies

/// Memory carried across frames by T-frame and round-robin policies.
struct PolicyMemory {
    std::vector<int> cached_set;
    std::int64_t frames_since_decision = 0;
    bool has_decision = false;
    std::size_t round_robin_next = 0;
};

/// Runs `gap_decide` every `period` frames and reuses the chosen set
/// (re-evaluated on the fresh channel) in between.
SchedulingDecision tdca_decide(PolicyMemory& memory, std::span<const double> queues,
                               std::span<const int> coherence, FrameChannel& channel,
                               const LinkParams& link, int period, int theta = 1, int subset_limit = 12);

SchedulingDecision tqqs_decide(PolicyMemory& memory, std::span<const double> queues,
                               std::span<const int> coherence, FrameChannel& channel,
                               const LinkParams& link, int period, int num_groups, int theta = 1);

/// Channel-agnostic reference policies (TDMA, full multiplexing, random K).
SchedulingDecision baseline_decide(PolicyKind kind, PolicyMemory& memory, std::span<const double> queues,
                                   std::span<const int> coherence, FrameChannel& channel,
                                   const LinkParams& link, Rng& rng, int k_random);

/// Dispatches to the configured policy and owns its memory.
class Scheduler {
public:
    Scheduler(PolicyConfig config, std::uint64_t seed);

    SchedulingDecision decide(std::span<const double> queues, std::span<const int> coherence,
                              FrameChannel& channel, const LinkParams& link);

    const PolicyConfig& config() const { return config_; }

private:
    PolicyConfig config_;
    std::uint64_t seed_;
    PolicyMemory memory_;
};

} // namespace dcasim
