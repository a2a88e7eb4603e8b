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
#include <vector>

#include "dcasim/channel.hpp"
#include "dcasim/errors.hpp"

using namespace dcasim;

TEST_CASE("block length from velocity")
{
    // 75 kHz coherence bandwidth times c / (8 f_c v), rounded.
    CHECK(coherence_from_velocity(16.67, 2.6e9, 1000.0) == 65);
    CHECK(coherence_from_velocity(0.8333, 2.6e9, 1000.0) == 1298);
    CHECK(coherence_from_velocity(1.0e6, 2.6e9, 1000.0) == 1);

    CHECK_THROWS_AS(coherence_from_velocity(0.0, 2.6e9, 1000.0), ParameterError);
    CHECK_THROWS_AS(coherence_from_velocity(-3.0, 2.6e9, 1000.0), ParameterError);
    CHECK_THROWS_AS(coherence_from_velocity(10.0, 0.0, 1000.0), ParameterError);
}

TEST_CASE("block length is nonincreasing in velocity")
{
    int prev = coherence_from_velocity(0.1, 2.6e9, 1000.0);
    for (double v = 0.2; v < 200.0; v *= 1.3) {
        const int t = coherence_from_velocity(v, 2.6e9, 1000.0);
        CHECK(t <= prev);
        CHECK(t >= 1);
        prev = t;
    }
}

TEST_CASE("explicit block length wins over velocity")
{
    UserProfile u;
    u.velocity = 16.67;
    CHECK(resolve_coherence(u, RadioParams{}) == 65);
    u.coherence_len = 7;
    CHECK(resolve_coherence(u, RadioParams{}) == 7);
    UserProfile none;
    CHECK_THROWS_AS(resolve_coherence(none, RadioParams{}), ParameterError);
}

TEST_CASE("sample_block is reproducible and advances the stream")
{
    Rng a(42);
    Rng b(42);
    const auto x = sample_block(3, 4, a);
    const auto y = sample_block(3, 4, b);
    CHECK(x.gains == y.gains);
    CHECK(x.num_users() == 3);
    CHECK(x.num_antennas() == 4);
    const auto z = sample_block(3, 4, a);
    CHECK(x.gains != z.gains);

    Rng f(42);
    const auto single = sample_block<float>(2, 2, f);
    CHECK(single.gains.rows() == 2);
}

TEST_CASE("gains have unit variance and circular components")
{
    constexpr int kUsers = 4;
    constexpr int kAntennas = 16;
    constexpr int kDraws = 100000;
    Rng rng(2024);
    Eigen::ArrayXXd power = Eigen::ArrayXXd::Zero(kUsers, kAntennas);
    double re2 = 0.0;
    double im2 = 0.0;
    double re = 0.0;
    for (int d = 0; d < kDraws; ++d) {
        const auto block = sample_block(kUsers, kAntennas, rng);
        power += block.gains.cwiseAbs2().array();
        re2 += block.gains.real().array().square().sum();
        im2 += block.gains.imag().array().square().sum();
        re += block.gains.real().sum();
    }
    power /= kDraws;
    CHECK(power.minCoeff() >= 0.99);
    CHECK(power.maxCoeff() <= 1.01);
    const double count = static_cast<double>(kDraws) * kUsers * kAntennas;
    CHECK(re2 / count == doctest::Approx(0.5).epsilon(0.02));
    CHECK(im2 / count == doctest::Approx(0.5).epsilon(0.02));
    CHECK(std::abs(re / count) < 1e-3);
}

TEST_CASE("frame channel rows do not depend on which rows are requested")
{
    FrameChannel genie(7, 3, 5, 4);
    FrameChannel lazy(7, 3, 5, 4);
    const std::vector<int> subset = {4, 1};
    const auto part = lazy.rows(subset);
    const auto full = genie.full();
    CHECK(part.row(0) == full.row(4));
    CHECK(part.row(1) == full.row(1));
    CHECK(lazy.full() == full);

    FrameChannel other_frame(7, 4, 5, 4);
    CHECK(other_frame.full() != full);
    FrameChannel other_seed(8, 3, 5, 4);
    CHECK(other_seed.full() != full);

    FrameChannel fixed(7, 3, 2, 3, ChannelModel::fixed);
    CHECK(fixed.full() == ComplexMatrix<double>::Ones(2, 3));
}
