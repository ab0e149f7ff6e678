// Copyright 2026 The mrdmca-sim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rng.hpp"
#include "topology.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace mrdmca {

enum class Protocol { Rcs, Mca, Emca, Mdmca, Mrdmca };

/// Selector strings: rcs, mca, emca, mdmca, mrdmca.
Protocol parse_protocol(std::string_view name);
std::string_view protocol_name(Protocol p) noexcept;

enum class Half { First, Second };

/// Dual modular clock: first half hops over prime labels, second half over
/// non-prime labels, each falling back to the full list when its side is
/// empty. Indices live in [0, |m_i|); rates in [1, |m_i|).
struct DualClockState {
    std::vector<ChannelId> channels;   // m_i, ascending
    PrimalitySplit split;
    std::size_t j1 = 0;
    std::size_t j2 = 0;
    std::size_t r1 = 1;
    std::size_t r2 = 1;
    std::size_t t = 0;                 // slots since the last rate draw
};

/// Random initial indices and rates.
DualClockState make_dual_clock(std::vector<ChannelId> channels, Rng& rng);

ChannelId dmca_first_half(DualClockState& s);
ChannelId dmca_second_half(DualClockState& s, ChannelId c1);

/// Fresh R1, R2 in [1, |m_i|) and t = 0; indices are kept. A singleton list
/// has no such range and keeps R = 1.
void reseed_rates(DualClockState& s, Rng& rng);

/// Advances the slot counter and redraws rates after |m_i| slots.
void dmca_end_slot(DualClockState& s, Rng& rng);

enum class BaselineKind { Rcs, Mca, Emca };

/// Single-clock baselines run inside the same two-attempts-per-slot frame.
///
/// MCA: p = smallest prime >= |m_i|, index advances by a fixed rate r in
/// [1, p) every half-slot, overflow (index >= |m_i|) picks a random channel,
/// and r is redrawn every 2p half-slots. EMCA hops exactly like MCA.
struct BaselineClockState {
    BaselineKind kind = BaselineKind::Rcs;
    std::vector<ChannelId> channels;
    std::size_t prime = 2;
    std::size_t index = 0;
    std::size_t rate = 1;
    std::size_t half_slots = 0;        // since the last rate draw
};

BaselineClockState make_baseline_clock(BaselineKind kind, std::vector<ChannelId> channels, Rng& rng);
ChannelId baseline_select(BaselineClockState& s, Half half, Rng& rng);

/// Per-node hopping engine for any protocol.
class Hopper {
public:
    Hopper(Protocol protocol, std::vector<ChannelId> channels, Rng rng);

    ChannelId first_half();
    ChannelId second_half(ChannelId c1);
    void end_slot();

    const std::variant<DualClockState, BaselineClockState>& state() const noexcept { return state_; }

private:
    std::variant<DualClockState, BaselineClockState> state_;
    Rng rng_;
};

} // namespace mrdmca
