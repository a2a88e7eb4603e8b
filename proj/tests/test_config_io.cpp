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
#include <filesystem>
#include <string>

#include "dcasim/config.hpp"
#include "dcasim/engine.hpp"
#include "dcasim/errors.hpp"
#include "dcasim/io.hpp"

using namespace dcasim;

namespace {

constexpr const char* kMixedMobility = R"(
# comment
[system]
antennas = 10
snr_db = 15
horizon = 2000
seed = 4

[users]
coherence = 100x3,5x2
arrival_rate = 1.5

[policy]
kind = qqs
groups = 2
)";

std::string error_of(const std::string& text, const std::vector<Override>& overrides = {})
{
    try {
        parse_config(text, overrides);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST_CASE("config parsing")
{
    const auto c = parse_config(kMixedMobility);
    CHECK(c.antennas == 10);
    CHECK(c.horizon_slots == 2000);
    CHECK(c.seed == 4);
    CHECK(c.coherence() == std::vector<int>{100, 100, 100, 5, 5});
    CHECK(c.policy.kind == PolicyKind::qqs);
    CHECK(c.noise_var() == doctest::Approx(std::pow(10.0, -1.5)));
    CHECK_FALSE(c.admission.has_value());
    for (const auto& u : c.users) {
        CHECK(u.arrival_rate == 1.5);
    }
}

TEST_CASE("defaults and velocities")
{
    const auto c = parse_config("[users]\nvelocity = 16.67, 0.8333\n");
    CHECK(c.coherence() == std::vector<int>{65, 1298});
    CHECK(c.antennas == 10);
    CHECK(c.policy.kind == PolicyKind::gap);
    CHECK(c.users[0].arrival_rate == 1.5);
}

TEST_CASE("admission section")
{
    const auto c = parse_config(std::string(kMixedMobility) + "[admission]\nenabled = true\n");
    REQUIRE(c.admission.has_value());
    CHECK(c.admission->threshold == 15000.0);
    CHECK(c.admission->grant == 15000.0);

    const auto d = parse_config(std::string(kMixedMobility) + "[admission]\nV = 40\nW_max = 0\n");
    CHECK(d.admission->threshold == 40.0);
    CHECK(d.admission->grant == 0.0);

    CHECK(error_of(std::string(kMixedMobility) + "[admission]\nV = -1\n").find("admission.V") != std::string::npos);
}

TEST_CASE("overrides")
{
    const auto c = parse_config(kMixedMobility, {parse_override("policy.kind=PL-QQS"), parse_override("policy.theta = 5")});
    CHECK(c.policy.kind == PolicyKind::plqqs);
    CHECK(c.policy.theta == 5);
    CHECK_THROWS_AS(parse_override("nothing"), ConfigError);
    CHECK(error_of(kMixedMobility, {{"bogus", "1"}}).find("section.key") != std::string::npos);
}

TEST_CASE("config errors name the key")
{
    CHECK(error_of("[system]\nantenas = 4\n[users]\ncoherence=5\n").find("system.antenas") != std::string::npos);
    CHECK(error_of("[users]\ncoherence = 5,0\n").find("users.coherence") != std::string::npos);
    CHECK(error_of("[users]\ncoherence = 5\narrival_rate = 7\n").find("users.arrival_rate") != std::string::npos);
    CHECK(error_of("[users]\ncoherence = 5\n[policy]\ntheta = 2\n").find("policy.theta") != std::string::npos);
    CHECK(error_of("[users]\ncoherence = 5\n[policy]\nkind = wat\n").find("policy.kind") != std::string::npos);
    CHECK(error_of("[system]\nantennas = x\n[users]\ncoherence=5\n").find("system.antennas") != std::string::npos);
    CHECK(error_of("[users]\ncoherence = 5,5,5\narrival_rate = 1,2\n").find("users.arrival_rate") !=
          std::string::npos);
    CHECK(error_of("[system]\nantennas = 4\n").find("users") != std::string::npos);
    CHECK(error_of("[users]\ncount = 20\ncoherence = 20\n").find("subset search limit") != std::string::npos);
    CHECK(error_of("[users]\ncount = 20\ncoherence = 20\n[policy]\nkind = QQS\n").empty());
    CHECK_THROWS_AS(load_config("/nonexistent/dcasim.ini"), ConfigError);
}

TEST_CASE("sweep keys")
{
    auto c = parse_config(kMixedMobility);
    set_numeric(c, "M", 40);
    CHECK(c.antennas == 40);
    set_numeric(c, "policy.theta", 3);
    CHECK(c.policy.theta == 3);
    set_numeric(c, "V", 300);
    CHECK(c.admission->threshold == 300.0);
    CHECK(c.admission->grant == 300.0);
    CHECK_THROWS_AS(set_numeric(c, "T", 1.5), ConfigError);
    CHECK_THROWS_AS(set_numeric(c, "theta", 2), ConfigError);
    CHECK_THROWS_AS(set_numeric(c, "colour", 1), ConfigError);
}

TEST_CASE("frames.csv round trip")
{
    auto c = parse_config(kMixedMobility);
    c.policy.kind = PolicyKind::gap;
    const auto r = run_simulation(c);
    const std::string text = frames_csv(r.frames);
    CHECK(text.rfind(std::string(kFramesHeader) + "\n", 0) == 0);
    const auto back = parse_frames_csv(text);
    REQUIRE(back.size() == r.frames.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
        const auto& a = r.frames[i];
        const auto& b = back[i];
        CHECK(a.frame_index == b.frame_index);
        CHECK(a.t_start == b.t_start);
        CHECK(a.frame_len == b.frame_len);
        CHECK(a.mode == b.mode);
        CHECK(a.users == b.users);
        REQUIRE(a.allocated_bits.size() == b.allocated_bits.size());
        for (std::size_t j = 0; j < a.allocated_bits.size(); ++j) {
            CHECK(b.allocated_bits[j] == doctest::Approx(a.allocated_bits[j]).epsilon(1e-11));
            CHECK(b.served_bits[j] == doctest::Approx(a.served_bits[j]).epsilon(1e-11));
        }
    }
    CHECK(frames_csv(back) == text);
}

TEST_CASE("queues.csv round trip")
{
    const auto r = run_simulation(parse_config(kMixedMobility));
    const std::string text = queues_csv(r.trace);
    CHECK(text.rfind("slot,q_1,q_2,q_3,q_4,q_5,hol_1,hol_2,hol_3,hol_4,hol_5\n", 0) == 0);
    const auto back = parse_queues_csv(text);
    CHECK(back.num_users == 5);
    REQUIRE(back.size() == r.trace.size());
    CHECK((back.backlog_matrix() - r.trace.backlog_matrix()).cwiseAbs().maxCoeff() <=
          1e-11 * std::max(1.0, r.trace.backlog_matrix().cwiseAbs().maxCoeff()));
    CHECK(back.hol == r.trace.hol);
}

TEST_CASE("schema mismatches name the column")
{
    auto what = [](auto&& fn) -> std::string {
        try {
            fn();
        } catch (const std::exception& e) {
            return e.what();
        }
        return {};
    };
    CHECK(what([] { parse_frames_csv("frame_index,t_start,frame_len,mode,users,alloc_bits,served_bits\n"); })
              .find("scheduled_users") != std::string::npos);
    CHECK(what([] { parse_queues_csv("slot,q_1,hol_2\n"); }).find("hol_1") != std::string::npos);
    CHECK(what([] { parse_frames_csv(""); }).find("empty") != std::string::npos);
    CHECK(what([] { parse_frames_csv(std::string(kFramesHeader) + "\n0,0,1,WARP,,,\n"); }).find("mode") !=
          std::string::npos);
}

TEST_CASE("summary file")
{
    const auto c = parse_config(kMixedMobility);
    const auto r = run_simulation(c);
    const auto kv = parse_summary(summary_text(c, r.summary));
    CHECK(kv.at("policy") == "QQS");
    CHECK(kv.at("users") == "5");
    CHECK(std::stod(kv.at("sum_rate")) == doctest::Approx(r.summary.sum_rate).epsilon(1e-11));
    CHECK(std::stod(kv.at("stability_slope")) == doctest::Approx(r.summary.stability_slope).epsilon(1e-11));
    CHECK(kv.count("avg_delay_5") == 1);
    CHECK(kv.count("final_backlog_1") == 1);
    CHECK(kv.count("admitted_rate") == 0);

    const auto dir = std::filesystem::temp_directory_path() / "dcasim_io_test";
    std::filesystem::remove_all(dir);
    write_run_outputs(dir, c, r);
    CHECK(read_file(dir / "frames.csv") == frames_csv(r.frames));
    CHECK(std::filesystem::exists(dir / "queues.csv"));
    CHECK(std::filesystem::exists(dir / "summary.txt"));
    CHECK_FALSE(std::filesystem::exists(dir / "frames.csv.tmp"));
    std::filesystem::remove_all(dir);
}
