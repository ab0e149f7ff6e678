// Copyright 2026 The mrdmca-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include "protocol.hpp"

#include "error.hpp"

#include <string>

namespace mrdmca {

NeighbourTables::NeighbourTables(NodeId owner, Coordinates owner_position, std::size_t n_nodes, double range,
                                 Validation validation)
    : owner_(owner),
      position_(owner_position),
      range_(range),
      validation_(validation),
      roles_(n_nodes, Role::Unknown),
      coords_(n_nodes)
{
    if (owner >= n_nodes) throw Error(ErrorKind::InvalidArgument, "table owner outside the node set");
    counts_[0] = n_nodes;
}

std::optional<Coordinates> NeighbourTables::coordinates(NodeId u) const
{
    if (u == owner_) return position_;
    if (roles_.at(u) == Role::Unknown) return std::nullopt;
    return coords_[u];
}

std::vector<NodeId> NeighbourTables::members(Role r) const
{
    std::vector<NodeId> out;
    for (NodeId u = 0; u < roles_.size(); ++u)
        if (roles_[u] == r) out.push_back(u);
    return out;
}

void NeighbourTables::set_role(NodeId u, Role r)
{
    --counts_[static_cast<int>(roles_[u])];
    ++counts_[static_cast<int>(r)];
    roles_[u] = r;
}

void NeighbourTables::add_direct(NodeId u, Coordinates at)
{
    if (u == owner_ || u >= roles_.size()) return;
    coords_[u] = at;
    if (roles_[u] != Role::Direct) set_role(u, Role::Direct);
}

void NeighbourTables::classify_learned(NodeId u, Coordinates at)
{
    if (u == owner_ || u >= roles_.size()) return;
    const Role current = roles_[u];
    if (current == Role::Direct) return;
    coords_[u] = at;
    if (validation_ == Validation::Coordinate && within_range(position_, at, range_)) {
        if (current != Role::Intended) set_role(u, Role::Intended);
    } else if (current == Role::Unknown) {
        set_role(u, Role::Indirect);
    }
}

std::vector<NodeId> NeighbourTables::pending_in_range() const
{
    std::vector<NodeId> out;
    for (NodeId u = 0; u < roles_.size(); ++u)
        if ((roles_[u] == Role::Indirect || roles_[u] == Role::Intended) &&
            within_range(position_, coords_[u], range_))
            out.push_back(u);
    return out;
}

std::vector<TableEntry> snapshot(const NeighbourTables& t)
{
    std::vector<TableEntry> out;
    out.reserve(t.dnl_size() + t.inl_size() + t.idn_size());
    for (NodeId u = 0; u < t.n_nodes(); ++u) {
        const Role r = t.role(u);
        if (r != Role::Unknown) out.push_back({u, r, *t.coordinates(u)});
    }
    return out;
}

HandshakeMessage make_message(HandshakeMessage::Kind kind, const NeighbourTables& t, bool with_tables)
{
    HandshakeMessage m;
    m.kind = kind;
    m.sender = t.owner();
    m.sender_position = t.position();
    if (with_tables) m.tables = snapshot(t);
    return m;
}

void receive(NeighbourTables& self, const HandshakeMessage& msg)
{
    self.add_direct(msg.sender, msg.sender_position);
    for (const auto& e : msg.tables) self.classify_learned(e.id, e.position);
}

void process_handshake(NeighbourTables& initiator, NeighbourTables& responder, Exchange exchange)
{
    using Kind = HandshakeMessage::Kind;
    const auto req = make_message(Kind::Request, initiator, true);
    receive(responder, req);
    const auto resp = make_message(Kind::Response, responder, exchange == Exchange::Mutual);
    receive(initiator, resp);
    // D-ACK only confirms; it adds nothing the responder does not hold.
}

Termination parse_termination(std::string_view name)
{
    if (name == "baseline") return Termination::Baseline;
    if (name == "controlled") return Termination::Controlled;
    if (name == "full") return Termination::RunToFull;
    throw Error(ErrorKind::Config, "unknown termination `" + std::string(name) + "` (baseline|controlled|full)");
}

std::string_view termination_name(Termination t) noexcept
{
    switch (t) {
    case Termination::Baseline: return "baseline";
    case Termination::Controlled: return "controlled";
    case Termination::RunToFull: return "full";
    }
    return "?";
}

bool check_termination(const NeighbourTables& t, Termination policy, std::size_t n_nodes)
{
    const bool all_known = t.known() == n_nodes - 1;
    switch (policy) {
    case Termination::Baseline: return all_known;
    case Termination::Controlled: return all_known && t.idn_size() == 0;
    case Termination::RunToFull: return false;
    }
    return false;
}

ProtocolTraits traits(Protocol p) noexcept
{
    switch (p) {
    case Protocol::Rcs:
    case Protocol::Mca: return {Exchange::Beacon, false};
    case Protocol::Emca:
    case Protocol::Mdmca: return {Exchange::Mutual, false};
    case Protocol::Mrdmca: return {Exchange::Mutual, true};
    }
    return {Exchange::Mutual, false};
}

Validation validation_for(Protocol p, Termination t) noexcept
{
    return (traits(p).validates_coordinates || t == Termination::Controlled) ? Validation::Coordinate
                                                                              : Validation::None;
}

} // namespace mrdmca
