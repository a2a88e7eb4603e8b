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

#include "dcasim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>

#include "dcasim/errors.hpp"

namespace dcasim {

std::vector<double> SlotTrace::time_average_delay(int user) const
{
    const Slot slots = size();
    std::vector<double> out(static_cast<std::size_t>(slots));
    double sum = 0.0;
    for (Slot s = 0; s < slots; ++s) {
        sum += hol[static_cast<std::size_t>(s * num_users + user)];
        out[static_cast<std::size_t>(s)] = sum / static_cast<double>(s + 1);
    }
    return out;
}

std::vector<double> SlotTrace::total_backlog() const
{
    const auto m = backlog_matrix();
    std::vector<double> out(static_cast<std::size_t>(m.rows()));
    Eigen::Map<Eigen::VectorXd>(out.data(), m.rows()) = m.rowwise().sum();
    return out;
}

double RunSummary::total_arrived() const
{
    return std::accumulate(arrived_bits.begin(), arrived_bits.end(), 0.0);
}

double RunSummary::total_served() const
{
    return std::accumulate(served_bits.begin(), served_bits.end(), 0.0);
}

double RunSummary::total_final_backlog() const
{
    return std::accumulate(final_backlog.begin(), final_backlog.end(), 0.0);
}

double RunSummary::mean_delay() const
{
    if (avg_delay.empty()) {
        return 0.0;
    }
    return std::accumulate(avg_delay.begin(), avg_delay.end(), 0.0) / static_cast<double>(avg_delay.size());
}

double least_squares_slope(std::span<const double> y)
{
    const auto n = static_cast<Eigen::Index>(y.size());
    if (n < 2) {
        return 0.0;
    }
    const Eigen::Map<const Eigen::VectorXd> values(y.data(), n);
    const Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(n, 0.0, static_cast<double>(n - 1));
    const double x_mean = x.mean();
    const Eigen::VectorXd dx = x.array() - x_mean;
    return dx.dot(values.array().matrix() - Eigen::VectorXd::Constant(n, values.mean())) / dx.squaredNorm();
}

RunResult run_simulation(const RunConfig& config)
{
    config.validate();
    const int n_users = config.num_users();
    const std::vector<int> coherence = config.coherence();
    const LinkParams link = config.link();
    Scheduler scheduler(config.policy, config.seed);

    std::vector<UserQueue> queues(static_cast<std::size_t>(n_users));
    std::vector<ArrivalModel> models;
    std::vector<Rng> arrival_streams;
    for (int n = 0; n < n_users; ++n) {
        models.push_back({config.users[static_cast<std::size_t>(n)].arrival_rate / config.packet_bits,
                          config.packet_bits});
        arrival_streams.push_back(make_stream(config.seed, StreamPurpose::arrivals, static_cast<std::uint64_t>(n)));
    }

    RunResult result;
    result.trace.num_users = n_users;
    RunSummary& summary = result.summary;
    double admitted = 0.0;

    std::vector<double> backlog(static_cast<std::size_t>(n_users));
    std::vector<double> allocated(static_cast<std::size_t>(n_users));
    Slot t = 0;
    std::int64_t frame = 0;
    while (t < config.horizon_slots) {
        for (int n = 0; n < n_users; ++n) {
            backlog[static_cast<std::size_t>(n)] = queues[static_cast<std::size_t>(n)].backlog();
        }
        FrameChannel channel(config.seed, frame, n_users, config.antennas, config.channel_model);
        const SchedulingDecision decision = scheduler.decide(backlog, coherence, channel, link);
        const int frame_len = decision.frame_len;
        if (decision.degenerate) {
            ++summary.degenerate_frames;
        }

        for (Slot s = t; s < t + frame_len; ++s) {
            for (int n = 0; n < n_users; ++n) {
                result.trace.backlog.push_back(backlog[static_cast<std::size_t>(n)]);
                result.trace.hol.push_back(queues[static_cast<std::size_t>(n)].sample_delay(s).hol);
            }
        }

        std::fill(allocated.begin(), allocated.end(), 0.0);
        for (std::size_t i = 0; i < decision.users.size(); ++i) {
            allocated[static_cast<std::size_t>(decision.users[i])] = decision.allocated_bits[i];
        }

        FrameRecord record;
        record.frame_index = frame;
        record.t_start = t;
        record.frame_len = frame_len;
        record.mode = decision.mode;
        record.users = decision.users;
        record.allocated_bits = decision.allocated_bits;
        record.objective = decision.objective;
        record.served_bits.assign(decision.users.size(), 0.0);

        for (int n = 0; n < n_users; ++n) {
            const auto idx = static_cast<std::size_t>(n);
            std::vector<Arrival> arrivals;
            if (config.admission) {
                if (backlog[idx] < config.admission->threshold && config.admission->grant > 0.0) {
                    arrivals.push_back({t, config.admission->grant});
                    admitted += config.admission->grant;
                }
            } else {
                arrivals = generate_arrivals(models[idx], frame_len, arrival_streams[idx]);
                for (Arrival& a : arrivals) {
                    a.slot += t;
                }
            }
            const double served = queues[idx].apply_frame(allocated[idx], arrivals, t, frame_len);
            const auto it = std::find(decision.users.begin(), decision.users.end(), n);
            if (it != decision.users.end()) {
                record.served_bits[static_cast<std::size_t>(it - decision.users.begin())] = served;
            }
        }

        result.frames.push_back(std::move(record));
        t += frame_len;
        ++frame;
    }

    summary.total_slots = t;
    summary.frames = frame;
    for (int n = 0; n < n_users; ++n) {
        const UserQueue& q = queues[static_cast<std::size_t>(n)];
        summary.arrived_bits.push_back(q.total_arrived());
        summary.served_bits.push_back(q.total_served());
        summary.final_backlog.push_back(q.backlog());
        summary.avg_delay.push_back(q.time_average_delay());
    }
    if (t > 0) {
        const double slots = static_cast<double>(t);
        summary.sum_rate = summary.total_served() / slots;
        const Eigen::VectorXd mean_queue = result.trace.backlog_matrix().colwise().mean();
        summary.mean_queue.assign(mean_queue.data(), mean_queue.data() + mean_queue.size());
        const std::vector<double> total = result.trace.total_backlog();
        const std::span<const double> tail(total.begin() + static_cast<std::ptrdiff_t>(t / 2), total.end());
        summary.stability_slope = least_squares_slope(tail);
    } else {
        summary.mean_queue.assign(static_cast<std::size_t>(n_users), 0.0);
    }
    summary.stable = std::abs(summary.stability_slope) < kStabilitySlopeThreshold;
    if (config.admission) {
        summary.admitted_rate = t > 0 ? admitted / static_cast<double>(t) : 0.0;
    }
    return result;
}

double estimate_capacity(RunConfig config, double threshold, double grant)
{
    config.admission = AdmissionControl{threshold, grant};
    return run_simulation(config).summary.admitted_rate.value_or(0.0);
}

std::vector<SweepRow> sweep(const RunConfig& base, std::string_view axis, std::vector<double> values,
                            unsigned workers)
{
    std::sort(values.begin(), values.end());
    std::vector<RunConfig> configs;
    configs.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        RunConfig c = base;
        set_numeric(c, axis, values[i]);
        c.seed = derive_seed(base.seed, StreamPurpose::sweep, i);
        configs.push_back(std::move(c));
    }

    std::vector<SweepRow> rows(values.size());
    workers = std::max(1u, workers);
    for (std::size_t start = 0; start < configs.size(); start += workers) {
        const std::size_t stop = std::min(configs.size(), start + workers);
        std::vector<std::future<RunSummary>> pending;
        for (std::size_t i = start; i < stop; ++i) {
            pending.push_back(std::async(workers > 1 ? std::launch::async : std::launch::deferred,
                                         [&c = configs[i]] { return run_simulation(c).summary; }));
        }
        for (std::size_t i = start; i < stop; ++i) {
            rows[i] = {values[i], pending[i - start].get()};
        }
    }
    return rows;
}

} // namespace dcasim
