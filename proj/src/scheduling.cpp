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

#include "dcasim/scheduling.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <utility>

#include "dcasim/errors.hpp"
#include "dcasim/precoding.hpp"

namespace dcasim {

namespace {

constexpr std::pair<PolicyKind, std::string_view> kPolicyNames[] = {
    {PolicyKind::gap, "GAP"},       {PolicyKind::tdca, "TDCA"},   {PolicyKind::pldca, "PLDCA"},
    {PolicyKind::qqs, "QQS"},       {PolicyKind::tqqs, "TQQS"},   {PolicyKind::plqqs, "PLQQS"},
    {PolicyKind::tdma, "TDMA"},     {PolicyKind::full_sm, "FULL_SM"},
    {PolicyKind::random_k, "RANDOM_K"},
};

std::string normalize_name(std::string_view name)
{
    std::string out;
    for (char c : name) {
        if (c == '-' || c == ' ') {
            continue;
        }
        out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    }
    return out;
}

// Visits every k-subset of {0..n-1} in lexicographic order.
template <typename Visit>
void for_each_combination(int n, int k, Visit&& visit)
{
    std::vector<int> idx(static_cast<std::size_t>(k));
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        visit(std::span<const int>(idx));
        int i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) {
            --i;
        }
        if (i < 0) {
            return;
        }
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) {
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
}

SchedulingDecision evaluate_on_channel(std::vector<int> users, std::span<const double> weights,
                                       std::span<const int> coherence, FrameChannel& channel,
                                       const LinkParams& link)
{
    if (users.empty()) {
        return SchedulingDecision::idle();
    }
    std::sort(users.begin(), users.end());
    const ComplexMatrix<double> gains = channel.rows(users);
    return evaluate_set(users, gains, weights, coherence, link);
}

} // namespace

std::string_view to_string(Mode mode)
{
    switch (mode) {
    case Mode::sm: return "SM";
    case Mode::stc: return "STC";
    case Mode::idle: break;
    }
    return "IDLE";
}

std::string_view to_string(PolicyKind kind)
{
    for (const auto& [k, name] : kPolicyNames) {
        if (k == kind) {
            return name;
        }
    }
    return "?";
}

PolicyKind parse_policy_kind(std::string_view name)
{
    const std::string key = normalize_name(name);
    for (const auto& [k, n] : kPolicyNames) {
        if (key == n || key == normalize_name(n)) {
            return k;
        }
    }
    if (key == "FULLSM") {
        return PolicyKind::full_sm;
    }
    if (key == "RANDOMK") {
        return PolicyKind::random_k;
    }
    throw ConfigError("policy.kind: unknown scheduler '" + std::string(name) + "'");
}

void PolicyConfig::validate() const
{
    if (theta < 1 || theta % 2 == 0) {
        throw ConfigError("policy.theta: must be an odd integer >= 1");
    }
    if (reschedule_period < 1) {
        throw ConfigError("policy.period: must be >= 1");
    }
    if (num_groups < 1) {
        throw ConfigError("policy.groups: must be >= 1");
    }
    if (t_stc < 0) {
        throw ConfigError("policy.t_stc: must be >= 1 (or 0 for the user's block length)");
    }
    if (k_random < 1) {
        throw ConfigError("policy.k_random: must be >= 1");
    }
    if (subset_limit < 1 || subset_limit > 24) {
        throw ConfigError("policy.subset_limit: must lie in [1, 24]");
    }
}

int PolicyConfig::effective_theta() const
{
    return (kind == PolicyKind::pldca || kind == PolicyKind::plqqs) ? theta : 1;
}

int PolicyConfig::effective_period() const
{
    return (kind == PolicyKind::tdca || kind == PolicyKind::tqqs) ? reschedule_period : 1;
}

bool PolicyConfig::uses_genie() const
{
    return kind == PolicyKind::gap || kind == PolicyKind::tdca || kind == PolicyKind::pldca;
}

bool PolicyConfig::is_qqs_family() const
{
    return kind == PolicyKind::qqs || kind == PolicyKind::tqqs || kind == PolicyKind::plqqs;
}

SchedulingDecision SchedulingDecision::idle()
{
    return {};
}

int stc_frame_len(int coherence, int t_stc)
{
    return t_stc > 0 ? std::min(coherence, t_stc) : coherence;
}

std::vector<double> queue_weights(std::span<const double> queues, int theta)
{
    std::vector<double> w(queues.size());
    std::transform(queues.begin(), queues.end(), w.begin(),
                   [theta](double q) { return theta == 1 ? q : std::pow(q, theta); });
    return w;
}

SchedulingDecision evaluate_set(std::span<const int> users, const ComplexMatrix<double>& gains,
                                std::span<const double> weights, std::span<const int> coherence,
                                const LinkParams& link)
{
    if (users.empty()) {
        return SchedulingDecision::idle();
    }
    if (gains.rows() != static_cast<Eigen::Index>(users.size()) || gains.cols() != link.antennas) {
        throw ParameterError("evaluate_set: gains must have one row per user and one column per antenna");
    }

    SchedulingDecision d;
    d.users.assign(users.begin(), users.end());
    d.allocated_bits.assign(users.size(), 0.0);

    if (users.size() == 1) {
        const int u = users.front();
        d.mode = Mode::stc;
        d.frame_len = stc_frame_len(coherence[static_cast<std::size_t>(u)], link.t_stc);
        const double rate = stc_rate(gains.row(0), link.total_power, link.antennas, link.noise_var);
        d.allocated_bits[0] = d.frame_len * rate;
        d.objective = weights[static_cast<std::size_t>(u)] * d.allocated_bits[0] / d.frame_len;
        return d;
    }

    d.mode = Mode::sm;
    d.frame_len = coherence[static_cast<std::size_t>(users.front())];
    for (int u : users) {
        d.frame_len = std::min(d.frame_len, coherence[static_cast<std::size_t>(u)]);
    }
    const int payload = d.frame_len - static_cast<int>(users.size());
    if (payload <= 0) {
        return d;
    }
    try {
        const auto zf = zero_forcing(gains, link.total_power, link.noise_var);
        double drift = 0.0;
        for (std::size_t i = 0; i < users.size(); ++i) {
            d.allocated_bits[i] = payload * zf.sm_rate(static_cast<Eigen::Index>(i));
            drift += weights[static_cast<std::size_t>(users[i])] * d.allocated_bits[i];
        }
        d.objective = drift / d.frame_len;
    } catch (const DegenerateChannelError&) {
        d.degenerate = true;
        std::fill(d.allocated_bits.begin(), d.allocated_bits.end(), 0.0);
        d.objective = 0.0;
    }
    return d;
}

SchedulingDecision gap_decide(std::span<const double> queues, std::span<const int> coherence,
                              const ComplexMatrix<double>& genie, const LinkParams& link, int theta,
                              int subset_limit)
{
    const int n = static_cast<int>(queues.size());
    if (static_cast<int>(coherence.size()) != n || genie.rows() != n) {
        throw ParameterError("gap_decide: queues, coherence and genie channel must cover the same users");
    }
    if (n > subset_limit) {
        throw ConfigError("policy.kind: GAP-family subset search limit is " + std::to_string(subset_limit) +
                          " users, got " + std::to_string(n) + "; use a QQS policy");
    }
    const std::vector<double> weights = queue_weights(queues, theta);

    SchedulingDecision best = SchedulingDecision::idle();
    std::vector<int> members;
    for (int k = 1; k <= n; ++k) {
        for_each_combination(n, k, [&](std::span<const int> subset) {
            members.assign(subset.begin(), subset.end());
            const ComplexMatrix<double> rows = genie(members, Eigen::all);
            SchedulingDecision cand = evaluate_set(members, rows, weights, coherence, link);
            if (cand.objective > best.objective) {
                best = std::move(cand);
            }
        });
    }
    if (!(best.objective > 0.0)) {
        return SchedulingDecision::idle();
    }
    return best;
}

std::vector<std::vector<int>> quantize_groups(std::span<const int> coherence, int num_groups)
{
    if (num_groups < 1) {
        throw ParameterError("quantize_groups: need at least one group");
    }
    std::vector<std::vector<int>> groups(static_cast<std::size_t>(num_groups));
    if (coherence.empty()) {
        return groups;
    }
    const std::int64_t t_max = *std::max_element(coherence.begin(), coherence.end());
    for (std::size_t n = 0; n < coherence.size(); ++n) {
        const std::int64_t t = coherence[n];
        if (t < 1) {
            throw ParameterError("quantize_groups: block lengths must be >= 1");
        }
        std::int64_t k = (t * num_groups + t_max - 1) / t_max;
        k = std::clamp<std::int64_t>(k, 1, num_groups);
        groups[static_cast<std::size_t>(k - 1)].push_back(static_cast<int>(n));
    }
    return groups;
}

double prefix_score(std::span<const double> sorted_weights, std::size_t len, double mean_coherence)
{
    double sum = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
        sum += sorted_weights[i];
    }
    return (1.0 - static_cast<double>(len) / mean_coherence) * sum;
}

std::size_t greedy_prefix_length(std::span<const double> sorted_weights, double mean_coherence)
{
    if (sorted_weights.empty()) {
        return 0;
    }
    std::size_t i = 1;
    double head_sum = sorted_weights[0];
    while (i < sorted_weights.size()) {
        const double next = sorted_weights[i];
        const double gain = (1.0 - static_cast<double>(i + 1) / mean_coherence) * next - head_sum / mean_coherence;
        if (!(gain > 0.0)) {
            break;
        }
        head_sum += next;
        ++i;
    }
    return i;
}

GroupSelection select_in_group(std::span<const int> group, std::span<const double> weights,
                               std::span<const int> coherence)
{
    GroupSelection sel;
    if (group.empty()) {
        return sel;
    }
    std::vector<int> order(group.begin(), group.end());
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        const double wa = weights[static_cast<std::size_t>(a)];
        const double wb = weights[static_cast<std::size_t>(b)];
        return wa > wb || (wa == wb && a < b);
    });
    double coherence_sum = 0.0;
    std::vector<double> sorted(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        sorted[i] = weights[static_cast<std::size_t>(order[i])];
        coherence_sum += coherence[static_cast<std::size_t>(order[i])];
    }
    sel.mean_coherence = coherence_sum / static_cast<double>(order.size());

    const std::size_t len = greedy_prefix_length(sorted, sel.mean_coherence);
    const double multiplexed = prefix_score(sorted, len, sel.mean_coherence);
    // Largest singleton is the head of the sorted group.
    if (sorted.front() >= multiplexed) {
        sel.users = {order.front()};
        sel.score = sorted.front();
        sel.single = true;
    } else {
        sel.users.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(len));
        sel.score = multiplexed;
        sel.single = sel.users.size() == 1;
    }
    return sel;
}

std::vector<int> qqs_select(std::span<const double> queues, std::span<const int> coherence, int num_groups,
                            int theta)
{
    if (queues.size() != coherence.size()) {
        throw ParameterError("qqs_select: queues and coherence must cover the same users");
    }
    const std::vector<double> weights = queue_weights(queues, theta);
    const auto groups = quantize_groups(coherence, num_groups);
    GroupSelection best;
    for (const auto& group : groups) {
        if (group.empty()) {
            continue;
        }
        GroupSelection sel = select_in_group(group, weights, coherence);
        if (sel.score > best.score) {
            best = std::move(sel);
        }
    }
    if (!(best.score > 0.0)) {
        return {};
    }
    return best.users;
}

SchedulingDecision qqs_decide(std::span<const double> queues, std::span<const int> coherence, int num_groups,
                              int theta, FrameChannel& channel, const LinkParams& link)
{
    const std::vector<double> weights = queue_weights(queues, theta);
    return evaluate_on_channel(qqs_select(queues, coherence, num_groups, theta), weights, coherence, channel,
                               link);
}

SchedulingDecision tdca_decide(PolicyMemory& memory, std::span<const double> queues,
                               std::span<const int> coherence, FrameChannel& channel, const LinkParams& link,
                               int period, int theta, int subset_limit)
{
    if (period < 1) {
        throw ParameterError("tdca_decide: period must be >= 1");
    }
    if (!memory.has_decision || memory.frames_since_decision >= period) {
        SchedulingDecision d = gap_decide(queues, coherence, channel.full(), link, theta, subset_limit);
        memory.cached_set = d.users;
        memory.has_decision = true;
        memory.frames_since_decision = 1;
        return d;
    }
    ++memory.frames_since_decision;
    return evaluate_on_channel(memory.cached_set, queue_weights(queues, theta), coherence, channel, link);
}

SchedulingDecision tqqs_decide(PolicyMemory& memory, std::span<const double> queues,
                               std::span<const int> coherence, FrameChannel& channel, const LinkParams& link,
                               int period, int num_groups, int theta)
{
    if (period < 1) {
        throw ParameterError("tqqs_decide: period must be >= 1");
    }
    if (!memory.has_decision || memory.frames_since_decision >= period) {
        memory.cached_set = qqs_select(queues, coherence, num_groups, theta);
        memory.has_decision = true;
        memory.frames_since_decision = 1;
    } else {
        ++memory.frames_since_decision;
    }
    return evaluate_on_channel(memory.cached_set, queue_weights(queues, theta), coherence, channel, link);
}

SchedulingDecision baseline_decide(PolicyKind kind, PolicyMemory& memory, std::span<const double> queues,
                                   std::span<const int> coherence, FrameChannel& channel,
                                   const LinkParams& link, Rng& rng, int k_random)
{
    const int n = static_cast<int>(queues.size());
    if (n == 0) {
        return SchedulingDecision::idle();
    }
    std::vector<int> users;
    switch (kind) {
    case PolicyKind::tdma:
        users = {static_cast<int>(memory.round_robin_next % static_cast<std::size_t>(n))};
        ++memory.round_robin_next;
        break;
    case PolicyKind::full_sm:
        users.resize(static_cast<std::size_t>(n));
        std::iota(users.begin(), users.end(), 0);
        break;
    case PolicyKind::random_k: {
        std::vector<int> all(static_cast<std::size_t>(n));
        std::iota(all.begin(), all.end(), 0);
        const int k = std::min(k_random, n);
        // Partial Fisher-Yates.
        for (int i = 0; i < k; ++i) {
            std::uniform_int_distribution<int> pick(i, n - 1);
            std::swap(all[static_cast<std::size_t>(i)], all[static_cast<std::size_t>(pick(rng))]);
        }
        users.assign(all.begin(), all.begin() + k);
        break;
    }
    default:
        throw ParameterError("baseline_decide: not a baseline policy");
    }
    return evaluate_on_channel(std::move(users), queue_weights(queues, 1), coherence, channel, link);
}

Scheduler::Scheduler(PolicyConfig config, std::uint64_t seed) : config_(config), seed_(seed)
{
    config_.validate();
}

SchedulingDecision Scheduler::decide(std::span<const double> queues, std::span<const int> coherence,
                                     FrameChannel& channel, const LinkParams& link)
{
    const int theta = config_.effective_theta();
    const int period = config_.effective_period();
    switch (config_.kind) {
    case PolicyKind::gap:
    case PolicyKind::pldca:
        return gap_decide(queues, coherence, channel.full(), link, theta, config_.subset_limit);
    case PolicyKind::tdca:
        return tdca_decide(memory_, queues, coherence, channel, link, period, theta, config_.subset_limit);
    case PolicyKind::qqs:
    case PolicyKind::plqqs:
        return qqs_decide(queues, coherence, config_.num_groups, theta, channel, link);
    case PolicyKind::tqqs:
        return tqqs_decide(memory_, queues, coherence, channel, link, period, config_.num_groups, theta);
    case PolicyKind::tdma:
    case PolicyKind::full_sm:
    case PolicyKind::random_k: {
        Rng rng = make_stream(seed_, StreamPurpose::scheduler, static_cast<std::uint64_t>(channel.frame()));
        return baseline_decide(config_.kind, memory_, queues, coherence, channel, link, rng, config_.k_random);
    }
    }
    throw ParameterError("Scheduler: unknown policy");
}

} // namespace dcasim
