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

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "dcasim/config.hpp"
#include "dcasim/engine.hpp"
#include "dcasim/errors.hpp"
#include "dcasim/io.hpp"

using namespace dcasim;

namespace {

RunConfig mixed_mobility(PolicyKind kind, std::int64_t horizon = 20000)
{
    RunConfig c;
    c.antennas = 10;
    for (int n = 0; n < 5; ++n) {
        UserProfile u;
        u.user_id = n + 1;
        u.coherence_len = n < 3 ? 100 : 5;
        u.arrival_rate = 1.5;
        c.users.push_back(u);
    }
    c.policy.kind = kind;
    c.horizon_slots = horizon;
    return c;
}

void check_conservation(const RunResult& r)
{
    const auto& s = r.summary;
    for (std::size_t n = 0; n < s.arrived_bits.size(); ++n) {
        CHECK(s.arrived_bits[n] - s.served_bits[n] ==
              doctest::Approx(s.final_backlog[n]).epsilon(1e-9).scale(std::max(1.0, s.arrived_bits[n])));
    }
    double frame_served = 0.0;
    for (const auto& f : r.frames) {
        for (std::size_t i = 0; i < f.users.size(); ++i) {
            CHECK(f.served_bits[i] <= f.allocated_bits[i] + 1e-9);
            frame_served += f.served_bits[i];
        }
    }
    CHECK(frame_served == doctest::Approx(s.total_served()).epsilon(1e-9));
}

} // namespace

TEST_CASE("least-squares slope")
{
    std::vector<double> line(100);
    for (std::size_t i = 0; i < line.size(); ++i) {
        line[i] = 3.0 - 0.25 * static_cast<double>(i);
    }
    CHECK(least_squares_slope(line) == doctest::Approx(-0.25));
    CHECK(least_squares_slope(std::vector<double>(10, 4.0)) == doctest::Approx(0.0));
    CHECK(least_squares_slope(std::vector<double>{1.0}) == 0.0);
}

TEST_CASE("zero horizon produces nothing")
{
    auto c = mixed_mobility(PolicyKind::gap, 0);
    const auto r = run_simulation(c);
    CHECK(r.frames.empty());
    CHECK(r.summary.total_slots == 0);
    CHECK(r.summary.sum_rate == 0.0);
}

TEST_CASE("frames tile the horizon")
{
    for (PolicyKind kind : {PolicyKind::gap, PolicyKind::qqs, PolicyKind::tdma}) {
        const auto r = run_simulation(mixed_mobility(kind, 3000));
        Slot t = 0;
        for (std::size_t i = 0; i < r.frames.size(); ++i) {
            CHECK(r.frames[i].frame_index == static_cast<std::int64_t>(i));
            CHECK(r.frames[i].t_start == t);
            t += r.frames[i].frame_len;
        }
        CHECK(t == r.summary.total_slots);
        CHECK(t >= 3000);
        CHECK(r.trace.size() == t);
        check_conservation(r);
    }
}

TEST_CASE("full multiplexing of twenty short-block users serves nothing")
{
    RunConfig c;
    c.antennas = 20;
    for (int n = 0; n < 20; ++n) {
        UserProfile u;
        u.user_id = n + 1;
        u.coherence_len = 20;
        u.arrival_rate = 1.5;
        c.users.push_back(u);
    }
    c.policy.kind = PolicyKind::full_sm;
    c.horizon_slots = 2000;
    const auto r = run_simulation(c);
    CHECK(r.summary.sum_rate == 0.0);
    CHECK(r.summary.total_served() == 0.0);
    check_conservation(r);
}

TEST_CASE("identical configs give identical traces")
{
    const auto c = mixed_mobility(PolicyKind::plqqs, 4000);
    const auto a = run_simulation(c);
    const auto b = run_simulation(c);
    CHECK(frames_csv(a.frames) == frames_csv(b.frames));
    CHECK(queues_csv(a.trace) == queues_csv(b.trace));
    auto other = c;
    other.seed = 2;
    CHECK(frames_csv(run_simulation(other).frames) != frames_csv(a.frames));
}

TEST_CASE("stable run serves what arrives")
{
    const auto r = run_simulation(mixed_mobility(PolicyKind::gap));
    const auto& s = r.summary;
    const double slots = static_cast<double>(s.total_slots);
    for (std::size_t n = 0; n < 5; ++n) {
        CHECK(s.served_bits[n] / slots == doctest::Approx(s.arrived_bits[n] / slots).epsilon(0.02));
        CHECK(std::isfinite(s.avg_delay[n]));
    }
    CHECK(s.sum_rate == doctest::Approx(7.5).epsilon(0.05));
    check_conservation(r);
}

TEST_CASE("round robin is overloaded on the same traffic")
{
    const auto r = run_simulation(mixed_mobility(PolicyKind::tdma));
    CHECK(r.summary.stability_slope > 0.1);
    CHECK_FALSE(r.summary.stable);
}

TEST_CASE("admission control")
{
    SUBCASE("single user on a fixed channel approaches the link rate")
    {
        RunConfig c;
        c.antennas = 1;
        c.snr_db = 10.0;
        c.channel_model = ChannelModel::fixed;
        UserProfile u;
        u.user_id = 1;
        u.coherence_len = 10;
        u.arrival_rate = 1.0;
        c.users.push_back(u);
        c.horizon_slots = 20000;
        const double a = estimate_capacity(c, 200.0, 200.0);
        CHECK(a == doctest::Approx(std::log2(11.0)).epsilon(0.02));
    }
    SUBCASE("no grants means no admitted traffic")
    {
        auto c = mixed_mobility(PolicyKind::gap, 2000);
        CHECK(estimate_capacity(c, 100.0, 0.0) == 0.0);
    }
    SUBCASE("admitted rate grows with the threshold")
    {
        double prev = 0.0;
        for (double v : {5.0, 50.0, 500.0}) {
            auto c = mixed_mobility(PolicyKind::qqs, 5000);
            const double a = estimate_capacity(c, v, v);
            CHECK(a >= prev * 0.98);
            prev = a;
        }
    }
}

TEST_CASE("parameter sweeps")
{
    auto base = mixed_mobility(PolicyKind::gap, 1000);
    const auto rows = sweep(base, "M", {20, 5, 10});
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].value == 5);
    CHECK(rows[1].value == 10);
    CHECK(rows[2].value == 20);
    CHECK(sweep(base, "M", {}).empty());
    CHECK_THROWS_AS(sweep(base, "warp_factor", {1.0}), ConfigError);

    const auto serial = sweep(base, "T", {1, 2}, 1);
    base.policy.kind = PolicyKind::tdca;
    const auto a = sweep(base, "T", {1, 2}, 1);
    const auto b = sweep(base, "T", {2, 1}, 2);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].value == b[i].value);
        CHECK(a[i].summary.sum_rate == b[i].summary.sum_rate);
        CHECK(a[i].summary.avg_delay == b[i].summary.avg_delay);
    }
    CHECK(serial.size() == 2);
}
