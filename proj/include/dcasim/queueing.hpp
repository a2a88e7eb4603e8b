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
#include <deque>
#include <span>
#include <vector>

#include "dcasim/rng.hpp"

namespace dcasim {

using Slot = std::int64_t;

struct Packet {
    Slot arrival_slot = 0;
    double remaining_bits = 0.0;
};

struct Arrival {
    Slot slot = 0;
    double bits = 0.0;
};

/// Per-slot Bernoulli packet arrivals: one packet of `packet_bits` with
/// probability `packet_prob` in every channel use.
struct ArrivalModel {
    double packet_prob = 0.5;
    double packet_bits = 3.0;

    double rate() const { return packet_prob * packet_bits; }
    void validate() const;
};

/// Arrivals over slots [0, num_slots). One uniform draw is consumed per slot.
std::vector<Arrival> generate_arrivals(const ArrivalModel& model, Slot num_slots, Rng& rng);

struct DelaySample {
    double hol = 0.0;
    double time_average = 0.0;
};

/// Bit queue with a packet FIFO for head-of-line delay accounting.
class UserQueue {
public:
    double backlog() const { return backlog_; }
    const std::deque<Packet>& packets() const { return fifo_; }
    bool empty() const { return fifo_.empty(); }

    /// Serves min(backlog, allocated) bits FIFO, then appends `arrivals`.
    /// Returns the bits actually served. Arrival slots must lie in
    /// [frame_start, frame_start + frame_len).
    double apply_frame(double allocated_bits, std::span<const Arrival> arrivals,
                       Slot frame_start, Slot frame_len);

    /// Records the head-of-line delay at `now` (0 when empty) and returns it
    /// with the running mean of all samples so far.
    DelaySample sample_delay(Slot now);

    double hol_delay(Slot now) const;
    double time_average_delay() const;
    std::int64_t delay_samples() const { return delay_samples_; }

    double total_arrived() const { return total_arrived_; }
    double total_served() const { return total_served_; }

private:
    double serve(double allocated_bits);

    std::deque<Packet> fifo_;
    double backlog_ = 0.0;
    double delay_sum_ = 0.0;
    std::int64_t delay_samples_ = 0;
    double total_arrived_ = 0.0;
    double total_served_ = 0.0;
};

} // namespace dcasim
