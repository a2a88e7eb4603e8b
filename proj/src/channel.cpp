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

#include "dcasim/channel.hpp"

#include <cmath>
#include <string>

#include "dcasim/errors.hpp"

namespace dcasim {

int coherence_from_velocity(double velocity, double carrier_freq, double cell_radius)
{
    if (!(velocity > 0.0) || !(carrier_freq > 0.0) || !(cell_radius > 0.0)) {
        throw ParameterError("coherence_from_velocity: velocity, carrier frequency and cell radius must be positive");
    }
    const double coherence_bandwidth = kSpeedOfLight / (4.0 * cell_radius);
    const double coherence_time = kSpeedOfLight / (8.0 * carrier_freq * velocity);
    const double blocks = std::round(coherence_bandwidth * coherence_time);
    if (!(blocks >= 1.0)) {
        return 1;
    }
    if (blocks > 1e9) {
        throw ParameterError("coherence_from_velocity: block length overflows");
    }
    return static_cast<int>(blocks);
}

int resolve_coherence(const UserProfile& user, const RadioParams& radio)
{
    if (user.coherence_len) {
        if (*user.coherence_len < 1) {
            throw ParameterError("user " + std::to_string(user.user_id) + ": coherence length must be >= 1");
        }
        return *user.coherence_len;
    }
    if (user.velocity) {
        return coherence_from_velocity(*user.velocity, radio.carrier_freq, radio.cell_radius);
    }
    throw ParameterError("user " + std::to_string(user.user_id) + ": neither coherence length nor velocity given");
}

template <typename Scalar>
ChannelBlock<Scalar> sample_block(int num_users, int num_antennas, Rng& rng, std::int64_t block_start)
{
    if (num_users < 1 || num_antennas < 1) {
        throw ParameterError("sample_block: need at least one user and one antenna");
    }
    ChannelBlock<Scalar> block;
    block.block_start = block_start;
    block.gains.resize(num_users, num_antennas);
    for (int n = 0; n < num_users; ++n) {
        block.gains.row(n) = sample_gains<Scalar>(num_antennas, rng).transpose();
    }
    return block;
}

template ChannelBlock<double> sample_block<double>(int, int, Rng&, std::int64_t);
template ChannelBlock<float> sample_block<float>(int, int, Rng&, std::int64_t);


FrameChannel::FrameChannel(std::uint64_t seed, std::int64_t frame, int num_users, int num_antennas,
                           ChannelModel model)
    : seed_(seed), frame_(frame), antennas_(num_antennas), model_(model),
      rows_(static_cast<std::size_t>(num_users))
{
    if (num_users < 1 || num_antennas < 1) {
        throw ParameterError("FrameChannel: need at least one user and one antenna");
    }
}

const ComplexVector<double>& FrameChannel::row(int user)
{
    auto& slot = rows_.at(static_cast<std::size_t>(user));
    if (!slot) {
        if (model_ == ChannelModel::fixed) {
            slot = ComplexVector<double>::Ones(antennas_);
        } else {
            Rng rng = make_stream(seed_, StreamPurpose::channel,
                                  static_cast<std::uint64_t>(frame_), static_cast<std::uint64_t>(user));
            slot = sample_gains<double>(antennas_, rng);
        }
    }
    return *slot;
}

ComplexMatrix<double> FrameChannel::rows(std::span<const int> users)
{
    ComplexMatrix<double> out(static_cast<Eigen::Index>(users.size()), antennas_);
    for (std::size_t i = 0; i < users.size(); ++i) {
        out.row(static_cast<Eigen::Index>(i)) = row(users[i]).transpose();
    }
    return out;
}

ComplexMatrix<double> FrameChannel::full()
{
    ComplexMatrix<double> out(num_users(), antennas_);
    for (int n = 0; n < num_users(); ++n) {
        out.row(n) = row(n).transpose();
    }
    return out;
}

} // namespace dcasim
