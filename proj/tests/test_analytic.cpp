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

#include <vector>

#include "dcasim/analytic.hpp"
#include "dcasim/errors.hpp"

using namespace dcasim;

TEST_CASE("time-sharing examples")
{
    std::vector<int> all(39, 50);
    all.push_back(5);
    const std::vector<TimeShareMode> single = {{all, 1.0}};
    CHECK(timeshare_sum_rate(single) == doctest::Approx(0.8).epsilon(1e-9));

    const std::vector<TimeShareMode> mixed = {{std::vector<int>(39, 50), 0.8}, {{5}, 0.2}};
    CHECK(timeshare_sum_rate(mixed) == doctest::Approx(7.064).epsilon(1e-9));

    const std::vector<TimeShareMode> alone = {{{7}, 1.0}};
    CHECK(timeshare_sum_rate(alone) == 1.0);
}

TEST_CASE("time-sharing validation")
{
    const std::vector<TimeShareMode> bad_sum = {{{10}, 0.5}, {{10}, 0.4}};
    CHECK_THROWS_AS(timeshare_sum_rate(bad_sum), ParameterError);
    const std::vector<TimeShareMode> empty_mode = {{{}, 1.0}};
    CHECK_THROWS_AS(timeshare_sum_rate(empty_mode), ParameterError);
    const std::vector<TimeShareMode> none;
    CHECK_THROWS_AS(timeshare_sum_rate(none), ParameterError);
}

TEST_CASE("training-limited mode rates clamp at zero")
{
    CHECK(mode_rate({std::vector<int>(20, 20), 1.0}) == 0.0);
    CHECK(mode_rate({std::vector<int>(3, 2), 1.0}) == 0.0);
    CHECK(mode_rate({{4, 4}, 1.0}) == doctest::Approx(1.0));
}

TEST_CASE("training degrees of freedom")
{
    CHECK(training_dof(20, 10) == 5.0);
    CHECK(training_dof(20, 10, 100) == 5.0);
    CHECK(training_dof(20, 20) == 0.0);
    CHECK(training_dof(20, 25) == 0.0);
    CHECK(training_dof(20, 0) == 0.0);
    CHECK(training_dof(100, 10, 4) == doctest::Approx(0.9 * 4));
    CHECK(training_dof(10, 1) == doctest::Approx(0.9));
    CHECK_THROWS_AS(training_dof(0, 1), ParameterError);

    for (int tc : {4, 10, 20, 37, 100}) {
        double best = -1.0;
        int best_ns = -1;
        for (int ns = 0; ns <= tc + 2; ++ns) {
            const double v = training_dof(tc, ns);
            CHECK(v <= tc / 4.0 + 1e-12);
            CHECK(training_dof(tc, ns, 3) <= v + 1e-12);
            if (v > best) {
                best = v;
                best_ns = ns;
            }
        }
        if (tc % 2 == 0) {
            CHECK(best_ns == tc / 2);
            CHECK(best == tc / 4.0);
        }
    }
}
