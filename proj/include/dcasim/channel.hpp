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

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "dcasim/rng.hpp"

namespace dcasim {

template <typename Scalar>
using ComplexMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using ComplexVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

/// Static description of one downlink user.
///
/// The coherence length (block length in channel uses) is either set
/// explicitly or derived from the velocity; an explicit value wins.
struct UserProfile {
    int user_id = 0;
    std::optional<double> velocity;     // m/s
    std::optional<int> coherence_len;   // channel uses
    double arrival_rate = 0.0;          // bits / channel use
};

/// Radio parameters used to map velocity to a block length.
struct RadioParams {
    double carrier_freq = 2.6e9;  // Hz
    double cell_radius = 1000.0;  // m
};

// Rounded value; block lengths are quoted against c = 3e8 m/s.
inline constexpr double kSpeedOfLight = 3.0e8;

/// Block length in channel uses for a user moving at `velocity`.
///
/// Coherence bandwidth c / (4 d) times Doppler coherence time c / (8 f_c v),
/// rounded to the nearest integer and floored at one channel use.
int coherence_from_velocity(double velocity, double carrier_freq, double cell_radius);

/// Resolved block length of `user`.
int resolve_coherence(const UserProfile& user, const RadioParams& radio);

/// Gains for one fading block. Row n is h_n^H for the n-th user in the block.
template <typename Scalar = double>
struct ChannelBlock {
    ComplexMatrix<Scalar> gains;
    std::int64_t block_start = 0;

    Eigen::Index num_users() const { return gains.rows(); }
    Eigen::Index num_antennas() const { return gains.cols(); }
};

/// Draws a vector of i.i.d. CN(0, 1) entries from `rng`.
template <typename Scalar = double>
ComplexVector<Scalar> sample_gains(Eigen::Index length, Rng& rng)
{
    std::normal_distribution<Scalar> component(Scalar(0), std::sqrt(Scalar(0.5)));
    ComplexVector<Scalar> v(length);
    for (Eigen::Index i = 0; i < length; ++i) {
        const Scalar re = component(rng);
        const Scalar im = component(rng);
        v(i) = std::complex<Scalar>(re, im);
    }
    return v;
}

/// Rayleigh block of `num_users` x `num_antennas` i.i.d. CN(0, 1) gains.
/// Entries are drawn row by row, so the result depends only on the seed and
/// on how far `rng` has been advanced.
template <typename Scalar = double>
ChannelBlock<Scalar> sample_block(int num_users, int num_antennas, Rng& rng,
                                  std::int64_t block_start = 0);

extern template ChannelBlock<double> sample_block<double>(int, int, Rng&, std::int64_t);
extern template ChannelBlock<float> sample_block<float>(int, int, Rng&, std::int64_t);

enum class ChannelModel {
    rayleigh,
    fixed,  // every gain equal to 1; deterministic single-link checks
};

/// Gains seen during one frame, drawn lazily per user.
///
/// User n's row comes from its own sub-stream keyed by (seed, frame, n), so a
/// policy that only asks for the scheduled rows sees exactly the values a
/// genie policy would see in the full matrix.
class FrameChannel {
public:
    FrameChannel(std::uint64_t seed, std::int64_t frame, int num_users, int num_antennas,
                 ChannelModel model = ChannelModel::rayleigh);

    const ComplexVector<double>& row(int user);
    ComplexMatrix<double> rows(std::span<const int> users);
    ComplexMatrix<double> full();

    int num_users() const { return static_cast<int>(rows_.size()); }
    int num_antennas() const { return antennas_; }
    std::int64_t frame() const { return frame_; }

private:
    std::uint64_t seed_;
    std::int64_t frame_;
    int antennas_;
    ChannelModel model_;
    std::vector<std::optional<ComplexVector<double>>> rows_;
};

} // namespace dcasim
