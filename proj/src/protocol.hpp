// Copyright 2026 The mrdmca-sim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "hopping.hpp"
#include "topology.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace mrdmca {

enum class Role : std::uint8_t {
    Unknown,
    Direct,     // DNL: completed a handshake with us
    Indirect,   // INL: known through gossip, not a direct neighbour
    Intended,   // IDN: coordinates say in range, handshake still pending
};

/// How learned (gossiped) nodes are classified.
enum class Validation {
    None,         // traditional DNL/INL: every learned node goes to INL
    Coordinate,   // learned nodes within range go to IDN until a handshake
};

/// DNL / INL / IDN of one node, with the coordinates of every known node.
///
/// Invariants: the three lists are disjoint and never contain the owner; a
/// node is never demoted from DNL; IDN members are within range of the owner.
class NeighbourTables {
public:
    NeighbourTables(NodeId owner, Coordinates owner_position, std::size_t n_nodes, double range,
                    Validation validation);

    NodeId owner() const noexcept { return owner_; }
    const Coordinates& position() const noexcept { return position_; }
    std::size_t n_nodes() const noexcept { return roles_.size(); }
    double range() const noexcept { return range_; }
    Validation validation() const noexcept { return validation_; }

    Role role(NodeId u) const { return roles_.at(u); }
    std::optional<Coordinates> coordinates(NodeId u) const;

    std::vector<NodeId> dnl() const { return members(Role::Direct); }
    std::vector<NodeId> inl() const { return members(Role::Indirect); }
    std::vector<NodeId> idn() const { return members(Role::Intended); }

    std::size_t dnl_size() const noexcept { return counts_[1]; }
    std::size_t inl_size() const noexcept { return counts_[2]; }
    std::size_t idn_size() const noexcept { return counts_[3]; }
    /// |DNL u INL|
    std::size_t known() const noexcept { return counts_[1] + counts_[2]; }

    /// Completed handshake with `u`: u joins DNL (leaving INL/IDN).
    void add_direct(NodeId u, Coordinates at);

    /// Placement of a node learned through a peer's tables.
    void classify_learned(NodeId u, Coordinates at);

    /// INL/IDN members whose recorded coordinates are within range. Under
    /// coordinate validation this is exactly IDN.
    std::vector<NodeId> pending_in_range() const;

private:
    std::vector<NodeId> members(Role r) const;
    void set_role(NodeId u, Role r);

    NodeId owner_;
    Coordinates position_;
    double range_;
    Validation validation_;
    std::vector<Role> roles_;
    std::vector<Coordinates> coords_;
    std::size_t counts_[4] = {0, 0, 0, 0};
};

struct TableEntry {
    NodeId id = 0;
    Role role = Role::Unknown;
    Coordinates position;
};

/// D-REQ / D-RESP / D-ACK. `tables` is the sender's DNL/INL/IDN snapshot and
/// is empty when the message carries no neighbour information.
struct HandshakeMessage {
    enum class Kind { Request, Response, Ack };

    Kind kind = Kind::Request;
    NodeId sender = 0;
    Coordinates sender_position;
    std::vector<TableEntry> tables;
};

std::vector<TableEntry> snapshot(const NeighbourTables& t);
HandshakeMessage make_message(HandshakeMessage::Kind kind, const NeighbourTables& t, bool with_tables);

/// Receiver side of a handshake: the sender becomes a direct neighbour and
/// every entry of its snapshot is classified.
void receive(NeighbourTables& self, const HandshakeMessage& msg);

/// Table exchange carried by the handshake.
enum class Exchange {
    Mutual,    // D-REQ and D-RESP both carry tables
    Beacon,    // only the initiator's D-REQ carries tables
};

/// Three-way handshake between two in-range nodes on the same idle channel.
/// Under Exchange::Beacon only `responder` merges the peer's tables; both
/// sides always record the direct link.
void process_handshake(NeighbourTables& initiator, NeighbourTables& responder, Exchange exchange);

enum class Termination {
    Baseline,     // |DNL u INL| = N-1
    Controlled,   // |DNL u INL| = N-1 and IDN empty
    RunToFull,    // never fires; the engine stops on ground-truth completion
};

Termination parse_termination(std::string_view name);
std::string_view termination_name(Termination t) noexcept;

bool check_termination(const NeighbourTables& t, Termination policy, std::size_t n_nodes);

/// Per-protocol behaviour beyond hopping.
struct ProtocolTraits {
    Exchange exchange;
    bool validates_coordinates;
};

ProtocolTraits traits(Protocol p) noexcept;

/// Coordinate validation is used by MR-DMCA and by any protocol run under
/// controlled termination (which needs IDN).
Validation validation_for(Protocol p, Termination t) noexcept;

} // namespace mrdmca
