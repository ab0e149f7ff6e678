// Copyright 2026 The mrdmca-sim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "pr_activity.hpp"
#include "run_record.hpp"
#include "topology.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace mrdmca {

/// Nodes tuned to one idle channel in one half-slot, and the mutually
/// in-range pairs among them.
struct HandshakeGroup {
    ChannelId channel;
    std::vector<NodeId> members;
    std::vector<std::pair<NodeId, NodeId>> pairs;   // a < b
};

struct HalfSlotResolution {
    std::vector<HandshakeGroup> groups;             // ascending channel
    std::vector<NodeId> deferred;                   // on a PR-busy channel
};

/// selections[i] is node i's channel in this half-slot.
HalfSlotResolution resolve_half_slot(std::span<const ChannelId> selections, ChannelOccupancy& occupancy,
                                     const GroundTopology& topo, std::int64_t half_slot);

/// Slot-synchronous simulation of one replication.
///
/// Terminated nodes stay on air: they keep hopping and answering handshakes
/// while their own marks stay frozen. The run continues until every node has
/// fired its policy and reached its ground-truth completion mark, or until
/// cfg.max_slots. `completed` is false in the latter case.
///
/// Optional trace lines: `slot half node channel event detail`.
RunRecord run_once(const RunConfig& cfg, const GroundTopology& topo, const ChannelAssignment& chans,
                   std::ostream* trace = nullptr);

} // namespace mrdmca
