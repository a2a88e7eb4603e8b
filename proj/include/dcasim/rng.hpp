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

#include <cstdint>
#include <random>

namespace dcasim {

using Rng = std::mt19937_64;

/// Purposes of independent random sub-streams within one run.
enum class StreamPurpose : std::uint64_t {
    channel = 1,
    arrivals = 2,
    scheduler = 3,
    sweep = 4,
};

namespace detail {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace detail

/// Seed for the sub-stream identified by (master seed, purpose, a, b).
/// Distinct tuples give statistically independent mt19937_64 streams.
constexpr std::uint64_t derive_seed(std::uint64_t master, StreamPurpose purpose,
                                    std::uint64_t a = 0, std::uint64_t b = 0) noexcept
{
    std::uint64_t h = detail::splitmix64(master);
    h = detail::splitmix64(h ^ static_cast<std::uint64_t>(purpose));
    h = detail::splitmix64(h ^ a);
    h = detail::splitmix64(h ^ (b + 0x632be59bd9b4e019ULL));
    return h;
}

inline Rng make_stream(std::uint64_t master, StreamPurpose purpose,
                       std::uint64_t a = 0, std::uint64_t b = 0)
{
    return Rng(derive_seed(master, purpose, a, b));
}

} // namespace dcasim
