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

#include <cmath>
#include <complex>

#include <Eigen/Core>
#include <Eigen/LU>
#include <Eigen/SVD>

#include "dcasim/channel.hpp"
#include "dcasim/errors.hpp"

namespace dcasim {

template <typename Scalar>
using RealVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Output of a linear precoder for one block.
template <typename Scalar = double>
struct PrecodeResult {
    ComplexMatrix<Scalar> precoder;   // M x N_s, column j steers user j
    Scalar power_scale_sq = 0;        // zeta^2
    RealVector<Scalar> sinr;
    RealVector<Scalar> sm_rate;       // log2(1 + sinr), bits / channel use

    Scalar power_scale() const { return std::sqrt(power_scale_sq); }
};

/// Relative singular-value threshold below which a channel counts as rank deficient.
inline constexpr double kRankTolerance = 1e-10;

/// Per-user SINR of an arbitrary linear precoder.
///
/// Row n of `gains` is h_n^H, column j of `precoder` is w_j. Interference
/// from every other column is evaluated, so this holds for non-ZF precoders.
template <typename GainsDerived, typename PrecoderDerived>
RealVector<typename GainsDerived::RealScalar>
linear_sinr(const Eigen::MatrixBase<GainsDerived>& gains,
            const Eigen::MatrixBase<PrecoderDerived>& precoder,
            typename GainsDerived::RealScalar power_scale_sq,
            typename GainsDerived::RealScalar noise_var)
{
    using Scalar = typename GainsDerived::RealScalar;
    const ComplexMatrix<Scalar> coupling = gains * precoder;
    const Eigen::Index users = coupling.rows();
    RealVector<Scalar> sinr(users);
    for (Eigen::Index n = 0; n < users; ++n) {
        const Scalar total = coupling.row(n).cwiseAbs2().sum();
        const Scalar signal = std::norm(coupling(n, n));
        sinr(n) = power_scale_sq * signal / (power_scale_sq * (total - signal) + noise_var);
    }
    return sinr;
}

/// Zero-forcing precoder W = H^H (H H^H)^{-1} with total power `total_power`.
///
/// Throws DegenerateChannelError if H has more rows than columns or its
/// smallest singular value is below kRankTolerance times its largest.
template <typename Derived>
PrecodeResult<typename Derived::RealScalar>
zero_forcing(const Eigen::MatrixBase<Derived>& gains,
             typename Derived::RealScalar total_power,
             typename Derived::RealScalar noise_var)
{
    using Scalar = typename Derived::RealScalar;
    if (!(total_power > 0) || !(noise_var > 0)) {
        throw ParameterError("zero_forcing: power and noise variance must be positive");
    }
    const Eigen::Index users = gains.rows();
    if (users < 1 || users > gains.cols()) {
        throw DegenerateChannelError("zero_forcing: need 1 <= scheduled users <= antennas");
    }

    const ComplexMatrix<Scalar> h = gains;
    const Eigen::JacobiSVD<ComplexMatrix<Scalar>> svd(h);
    const auto& sv = svd.singularValues();
    if (!(sv(users - 1) > Scalar(kRankTolerance) * sv(0))) {
        throw DegenerateChannelError("zero_forcing: channel matrix is rank deficient");
    }

    const ComplexMatrix<Scalar> gram = h * h.adjoint();
    PrecodeResult<Scalar> out;
    out.precoder = h.adjoint() * gram.partialPivLu().inverse();
    out.power_scale_sq = total_power / out.precoder.squaredNorm();
    out.sinr = linear_sinr(h, out.precoder, out.power_scale_sq, noise_var);
    out.sm_rate = out.sinr.unaryExpr([](Scalar g) { return std::log2(Scalar(1) + g); });
    return out;
}

/// Single-user space-time-coding rate log2(1 + |h|^2 P / (M sigma^2)).
template <typename Derived>
typename Derived::RealScalar stc_rate(const Eigen::MatrixBase<Derived>& user_channel,
                                      typename Derived::RealScalar total_power,
                                      Eigen::Index num_antennas,
                                      typename Derived::RealScalar noise_var)
{
    using Scalar = typename Derived::RealScalar;
    if (user_channel.size() != num_antennas || num_antennas < 1) {
        throw ParameterError("stc_rate: channel length must equal the antenna count");
    }
    if (!(total_power > 0) || !(noise_var > 0)) {
        throw ParameterError("stc_rate: power and noise variance must be positive");
    }
    const Scalar gain = user_channel.squaredNorm();
    return std::log2(Scalar(1) + gain * total_power / (Scalar(num_antennas) * noise_var));
}

} // namespace dcasim
