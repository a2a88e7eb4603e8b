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

#include "dcasim/queueing.hpp"

#include <algorithm>

#include "dcasim/errors.hpp"

namespace dcasim {

void ArrivalModel::validate() const
{
    if (!(packet_prob >= 0.0 && packet_prob <= 1.0)) {
        throw ParameterError("arrival model: packet probability must lie in [0, 1]");
    }
    if (!(packet_bits > 0.0)) {
        throw ParameterError("arrival model: packet size must be positive");
    }
}

std::vector<Arrival> generate_arrivals(const ArrivalModel& model, Slot num_slots, Rng& rng)
{
    model.validate();
    std::vector<Arrival> out;
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    for (Slot s = 0; s < num_slots; ++s) {
        if (uniform(rng) < model.packet_prob) {
            out.push_back({s, model.packet_bits});
        }
    }
    return out;
}

double UserQueue::serve(double allocated_bits)
{
    if (allocated_bits >= backlog_) {
        const double served = backlog_;
        fifo_.clear();
        backlog_ = 0.0;
        return served;
    }
    double budget = allocated_bits;
    while (budget > 0.0 && !fifo_.empty()) {
        Packet& head = fifo_.front();
        if (budget >= head.remaining_bits) {
            budget -= head.remaining_bits;
            fifo_.pop_front();
        } else {
            head.remaining_bits -= budget;
            budget = 0.0;
        }
    }
    const double served = allocated_bits - budget;
    backlog_ = fifo_.empty() ? 0.0 : std::max(0.0, backlog_ - served);
    return served;
}

double UserQueue::apply_frame(double allocated_bits, std::span<const Arrival> arrivals,
                              Slot frame_start, Slot frame_len)
{
    if (!(allocated_bits >= 0.0)) {
        throw ParameterError("apply_frame: allocated bits must be nonnegative");
    }
    if (frame_len < 1) {
        throw ParameterError("apply_frame: frame length must be >= 1");
    }
    const double served = serve(allocated_bits);
    total_served_ += served;

    Slot last = fifo_.empty() ? frame_start : fifo_.back().arrival_slot;
    for (const Arrival& a : arrivals) {
        if (a.slot < frame_start || a.slot >= frame_start + frame_len) {
            throw ParameterError("apply_frame: arrival outside the frame");
        }
        if (a.bits <= 0.0) {
            continue;
        }
        if (a.slot < last) {
            throw ParameterError("apply_frame: arrivals must be in slot order");
        }
        last = a.slot;
        fifo_.push_back({a.slot, a.bits});
        backlog_ += a.bits;
        total_arrived_ += a.bits;
    }
    return served;
}

double UserQueue::hol_delay(Slot now) const
{
    if (fifo_.empty()) {
        return 0.0;
    }
    return static_cast<double>(now - fifo_.front().arrival_slot);
}

DelaySample UserQueue::sample_delay(Slot now)
{
    const double hol = hol_delay(now);
    delay_sum_ += hol;
    ++delay_samples_;
    return {hol, time_average_delay()};
}

double UserQueue::time_average_delay() const
{
    return delay_samples_ == 0 ? 0.0 : delay_sum_ / static_cast<double>(delay_samples_);
}

} // namespace dcasim
