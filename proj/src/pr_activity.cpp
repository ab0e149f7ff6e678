// Copyright 2026 The mrdmca-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include "pr_activity.hpp"

#include "error.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace mrdmca {

PrParams PrParams::rates(double lambda_x, double lambda_y)
{
    if (!(lambda_x > 0.0) || !(lambda_y > 0.0))
        throw Error(ErrorKind::InvalidArgument, "PR rates must be strictly positive");
    return {lambda_x, lambda_y, true};
}

namespace {

double parse_double(std::string_view s)
{
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw Error(ErrorKind::Config, "bad number `" + std::string(s) + "`");
    return v;
}

} // namespace

PrParams parse_pr_level(std::string_view text)
{
    if (text == "off") return PrParams::off();
    if (text == "high") return PrParams::high();
    auto colon = text.find(':');
    if (colon == std::string_view::npos)
        throw Error(ErrorKind::Config, "PR level must be off, high or lambda_x:lambda_y, got `" + std::string(text) + "`");
    return PrParams::rates(parse_double(text.substr(0, colon)), parse_double(text.substr(colon + 1)));
}

std::string pr_level_name(const PrParams& p)
{
    if (!p.enabled) return "off";
    if (p == PrParams::high()) return "high";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g:%g", p.lambda_x, p.lambda_y);
    return buf;
}

ChannelOccupancy::ChannelOccupancy(PrParams params, int n_channels, std::uint64_t seed)
    : params_(params), channels_(static_cast<std::size_t>(n_channels))
{
    if (n_channels < 1) throw Error(ErrorKind::InvalidArgument, "occupancy needs at least one channel");
    if (!params_.enabled) return;
    if (!(params_.lambda_x > 0.0) || !(params_.lambda_y > 0.0))
        throw Error(ErrorKind::InvalidArgument, "PR rates must be strictly positive");

    for (std::size_t c = 0; c < channels_.size(); ++c) {
        auto& ch = channels_[c];
        ch.rng.seed(derive_seed(seed, {c + 1}));
        ch.on = std::bernoulli_distribution(params_.utilization())(ch.rng);
        ch.entered = 0.0;
        ch.next = sample_sojourn(ch, ch.on);
    }
}

double ChannelOccupancy::sample_sojourn(Channel& ch, bool on)
{
    return std::exponential_distribution<double>(on ? params_.lambda_x : params_.lambda_y)(ch.rng);
}

bool ChannelOccupancy::is_busy(ChannelId channel, std::int64_t half_slot)
{
    if (channel.label < 1 || static_cast<std::size_t>(channel.label) > channels_.size())
        throw Error(ErrorKind::InvalidArgument, "channel label out of range");
    auto& ch = channels_[static_cast<std::size_t>(channel.label - 1)];
    if (half_slot < ch.last_query) throw std::logic_error("occupancy queried backwards in time");
    ch.last_query = half_slot;
    if (!params_.enabled) return false;

    const double t = 0.5 * static_cast<double>(half_slot);
    while (ch.next <= t) {
        const double held = ch.next - ch.entered;
        if (ch.on) {
            stats_.on_total += held;
            ++stats_.on_count;
        } else {
            stats_.off_total += held;
            ++stats_.off_count;
        }
        ch.on = !ch.on;
        ch.entered = ch.next;
        ch.next += sample_sojourn(ch, ch.on);
    }
    return ch.on;
}

void ChannelOccupancy::force_state(ChannelId channel, bool on, double next_transition)
{
    if (!params_.enabled) throw std::logic_error("force_state on a disabled occupancy process");
    auto& ch = channels_.at(static_cast<std::size_t>(channel.label - 1));
    ch.on = on;
    ch.entered = 0.5 * static_cast<double>(std::max<std::int64_t>(ch.last_query, 0));
    ch.next = next_transition;
}

} // namespace mrdmca
