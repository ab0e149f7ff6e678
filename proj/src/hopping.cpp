// Copyright 2026 The mrdmca-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include "hopping.hpp"

#include "error.hpp"

#include <string>

namespace mrdmca {

Protocol parse_protocol(std::string_view name)
{
    if (name == "rcs") return Protocol::Rcs;
    if (name == "mca") return Protocol::Mca;
    if (name == "emca") return Protocol::Emca;
    if (name == "mdmca") return Protocol::Mdmca;
    if (name == "mrdmca") return Protocol::Mrdmca;
    throw Error(ErrorKind::Config, "unknown protocol `" + std::string(name) + "` (rcs|mca|emca|mdmca|mrdmca)");
}

std::string_view protocol_name(Protocol p) noexcept
{
    switch (p) {
    case Protocol::Rcs: return "rcs";
    case Protocol::Mca: return "mca";
    case Protocol::Emca: return "emca";
    case Protocol::Mdmca: return "mdmca";
    case Protocol::Mrdmca: return "mrdmca";
    }
    return "?";
}

namespace {

std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi_exclusive)
{
    return std::uniform_int_distribution<std::size_t>(lo, hi_exclusive - 1)(rng);
}

void require_channels(const std::vector<ChannelId>& channels)
{
    if (channels.empty()) throw Error(ErrorKind::InvalidArgument, "hopping needs a non-empty channel set");
}

} // namespace

DualClockState make_dual_clock(std::vector<ChannelId> channels, Rng& rng)
{
    require_channels(channels);
    DualClockState s;
    s.split = split_primality(channels);
    s.channels = std::move(channels);
    const std::size_t m = s.channels.size();
    s.j1 = uniform_index(rng, 0, m);
    s.j2 = uniform_index(rng, 0, m);
    reseed_rates(s, rng);
    return s;
}

ChannelId dmca_first_half(DualClockState& s)
{
    const std::size_t m = s.channels.size();
    s.j1 = (s.j1 + s.r1) % m;
    const auto& primes = s.split.primes;
    if (!primes.empty()) return primes[s.j1 % primes.size()];
    return s.channels[s.j1];
}

ChannelId dmca_second_half(DualClockState& s, ChannelId c1)
{
    const std::size_t m = s.channels.size();
    s.j2 = (s.j2 + s.r2) % m;
    const auto& non_primes = s.split.non_primes;
    ChannelId c2 = non_primes.empty() ? s.channels[s.j2] : non_primes[s.j2 % non_primes.size()];
    if (c2 == c1) {
        s.j2 = (s.j2 + 1) % m;
        c2 = s.channels[s.j2];
    }
    return c2;
}

void reseed_rates(DualClockState& s, Rng& rng)
{
    const std::size_t m = s.channels.size();
    if (m > 1) {
        s.r1 = uniform_index(rng, 1, m);
        s.r2 = uniform_index(rng, 1, m);
    } else {
        s.r1 = s.r2 = 1;
    }
    s.t = 0;
}

void dmca_end_slot(DualClockState& s, Rng& rng)
{
    if (++s.t > s.channels.size()) reseed_rates(s, rng);
}

BaselineClockState make_baseline_clock(BaselineKind kind, std::vector<ChannelId> channels, Rng& rng)
{
    require_channels(channels);
    BaselineClockState s;
    s.kind = kind;
    s.channels = std::move(channels);
    s.prime = static_cast<std::size_t>(smallest_prime_at_least(static_cast<int>(s.channels.size())));
    if (kind != BaselineKind::Rcs) {
        s.index = uniform_index(rng, 0, s.prime);
        s.rate = uniform_index(rng, 1, s.prime);
    }
    return s;
}

ChannelId baseline_select(BaselineClockState& s, Half, Rng& rng)
{
    const std::size_t m = s.channels.size();
    if (s.kind == BaselineKind::Rcs) return s.channels[uniform_index(rng, 0, m)];

    if (s.half_slots == 2 * s.prime) {
        s.rate = uniform_index(rng, 1, s.prime);
        s.half_slots = 0;
    }
    ++s.half_slots;
    s.index = (s.index + s.rate) % s.prime;
    if (s.index >= m) return s.channels[uniform_index(rng, 0, m)];
    return s.channels[s.index];
}

namespace {

BaselineKind baseline_kind(Protocol p)
{
    switch (p) {
    case Protocol::Rcs: return BaselineKind::Rcs;
    case Protocol::Mca: return BaselineKind::Mca;
    default: return BaselineKind::Emca;
    }
}

} // namespace

Hopper::Hopper(Protocol protocol, std::vector<ChannelId> channels, Rng rng) : rng_(std::move(rng))
{
    if (protocol == Protocol::Mdmca || protocol == Protocol::Mrdmca)
        state_ = make_dual_clock(std::move(channels), rng_);
    else
        state_ = make_baseline_clock(baseline_kind(protocol), std::move(channels), rng_);
}

ChannelId Hopper::first_half()
{
    if (auto* d = std::get_if<DualClockState>(&state_)) return dmca_first_half(*d);
    return baseline_select(std::get<BaselineClockState>(state_), Half::First, rng_);
}

ChannelId Hopper::second_half(ChannelId c1)
{
    if (auto* d = std::get_if<DualClockState>(&state_)) return dmca_second_half(*d, c1);
    return baseline_select(std::get<BaselineClockState>(state_), Half::Second, rng_);
}

void Hopper::end_slot()
{
    if (auto* d = std::get_if<DualClockState>(&state_)) dmca_end_slot(*d, rng_);
}

} // namespace mrdmca
