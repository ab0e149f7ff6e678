// Copyright 2026 The mrdmca-sim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rng.hpp"
#include "topology.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mrdmca {

/// Alternating ON/OFF renewal process rates, in 1/slots.
///
/// lambda_x is the ON->OFF rate and lambda_y the OFF->ON rate, so that the
/// mean busy period is 1/lambda_x, the mean idle period is 1/lambda_y and the
/// long-run utilisation is lambda_y / (lambda_x + lambda_y).
struct PrParams {
    double lambda_x = 1.0;
    double lambda_y = 1.0;
    bool enabled = false;

    static PrParams off() { return {1.0, 1.0, false}; }
    /// 85% utilisation: mean ON 8.5 slots, mean OFF 1.5 slots.
    static PrParams high() { return {1.0 / 8.5, 1.0 / 1.5, true}; }
    static PrParams rates(double lambda_x, double lambda_y);

    double utilization() const noexcept { return enabled ? lambda_y / (lambda_x + lambda_y) : 0.0; }
    double mean_on() const noexcept { return 1.0 / lambda_x; }
    double mean_off() const noexcept { return 1.0 / lambda_y; }

    friend bool operator==(const PrParams&, const PrParams&) = default;
};

/// Accepts `off`, `high`, or an explicit `lambda_x:lambda_y` pair.
PrParams parse_pr_level(std::string_view text);
std::string pr_level_name(const PrParams& p);

struct SojournStats {
    double on_total = 0.0;
    std::uint64_t on_count = 0;
    double off_total = 0.0;
    std::uint64_t off_count = 0;
};

/// Per-channel occupancy shared by every node (no spatial PR model).
///
/// Each channel owns its own RNG stream, so a channel's trajectory does not
/// depend on when or how often other channels are queried.
class ChannelOccupancy {
public:
    ChannelOccupancy(PrParams params, int n_channels, std::uint64_t seed);

    /// State at the start of half-slot `half_slot` (time half_slot / 2).
    /// Queries for one channel must not go back in time.
    bool is_busy(ChannelId channel, std::int64_t half_slot);

    /// Test hook: override a channel's current state and next transition time.
    void force_state(ChannelId channel, bool on, double next_transition);

    const SojournStats& stats() const noexcept { return stats_; }
    const PrParams& params() const noexcept { return params_; }

private:
    struct Channel {
        bool on = false;
        double entered = 0.0;
        double next = 0.0;
        std::int64_t last_query = -1;
        Rng rng;
    };

    double sample_sojourn(Channel& ch, bool on);

    PrParams params_;
    std::vector<Channel> channels_;
    SojournStats stats_;
};

} // namespace mrdmca
