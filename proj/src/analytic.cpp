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

#include "dcasim/analytic.hpp"

#include <algorithm>
#include <cmath>

#include "dcasim/errors.hpp"

namespace dcasim {

double training_dof(double coherence, int num_scheduled, std::optional<int> antennas)
{
    if (!(coherence >= 1.0) || num_scheduled < 0) {
        throw ParameterError("training_dof: need T_c >= 1 and N_s >= 0");
    }
    if (antennas && *antennas < 0) {
        throw ParameterError("training_dof: antenna count must be nonnegative");
    }
    const double efficiency = std::max(0.0, (coherence - num_scheduled) / coherence);
    const int streams = antennas ? std::min(*antennas, num_scheduled) : num_scheduled;
    return efficiency * streams;
}

double mode_rate(const TimeShareMode& mode)
{
    if (mode.coherence.empty()) {
        throw ParameterError("timeshare: a mode must serve at least one user");
    }
    double overhead = 0.0;
    if (mode.coherence.size() > 1) {
        for (int t : mode.coherence) {
            if (t < 1) {
                throw ParameterError("timeshare: block lengths must be >= 1");
            }
            overhead += 1.0 / t;
        }
    }
    return static_cast<double>(mode.coherence.size()) * std::max(0.0, 1.0 - overhead);
}

double timeshare_sum_rate(std::span<const TimeShareMode> modes)
{
    double total_fraction = 0.0;
    double rate = 0.0;
    for (const auto& m : modes) {
        if (!(m.fraction >= 0.0 && m.fraction <= 1.0)) {
            throw ParameterError("timeshare: fractions must lie in [0, 1]");
        }
        total_fraction += m.fraction;
        rate += m.fraction * mode_rate(m);
    }
    if (std::abs(total_fraction - 1.0) > 1e-9) {
        throw ParameterError("timeshare: fractions must sum to 1");
    }
    return rate;
}

} // namespace dcasim
