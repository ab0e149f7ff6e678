// Copyright 2026 The mrdmca-sim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace mrdmca {

using NodeId = std::size_t;

struct Coordinates {
    double x = 0.0;
    double y = 0.0;
};

double distance(const Coordinates& a, const Coordinates& b) noexcept;

/// Unit-disk link rule; a distance of exactly `range` is a link.
inline bool within_range(const Coordinates& a, const Coordinates& b, double range) noexcept
{
    return distance(a, b) <= range;
}

struct Area {
    double width = 200.0;
    double height = 200.0;
};

/// Channel label in [1, C]. Primality is a property of the label.
struct ChannelId {
    int label = 0;

    friend auto operator<=>(const ChannelId&, const ChannelId&) = default;
};

bool is_prime(int n) noexcept;
int smallest_prime_at_least(int n) noexcept;

/// Ground truth the discovered topology is validated against.
class GroundTopology {
public:
    GroundTopology(std::vector<Coordinates> positions, double range);

    std::size_t size() const noexcept { return positions_.size(); }
    double range() const noexcept { return range_; }
    const Coordinates& position(NodeId i) const { return positions_.at(i); }
    std::span<const Coordinates> positions() const noexcept { return positions_; }

    bool linked(NodeId a, NodeId b) const { return a != b && adjacency_.at(a * size() + b); }

    /// DNL*_i, ascending.
    std::span<const NodeId> direct(NodeId i) const { return direct_.at(i); }
    /// INL*_i: reachable from i, excluding i and DNL*_i; ascending.
    std::span<const NodeId> indirect(NodeId i) const { return indirect_.at(i); }

    std::vector<std::pair<NodeId, NodeId>> edges() const;
    bool connected() const noexcept { return connected_; }

private:
    std::vector<Coordinates> positions_;
    double range_;
    std::vector<char> adjacency_;
    std::vector<std::vector<NodeId>> direct_;
    std::vector<std::vector<NodeId>> indirect_;
    bool connected_ = false;
};

/// Uniform placement over `area`, rejection-resampled until the unit-disk
/// graph is connected. Throws Error(Infeasible) after `max_attempts`.
GroundTopology deploy(std::size_t n_nodes, Area area, double range, std::uint64_t seed,
                      std::size_t max_attempts = 10000);

struct ChannelAssignment {
    int pool = 0;
    int similarity = 0;
    std::vector<ChannelId> common;               // ascending
    std::vector<std::vector<ChannelId>> sets;    // per node, ascending

    std::size_t overlap(NodeId a, NodeId b) const;
};

/// m globally common channels, plus each remaining pool channel added to each
/// node independently with probability 1/2.
ChannelAssignment assign_channels(std::size_t n_nodes, int pool, int similarity, std::uint64_t seed);

struct PrimalitySplit {
    std::vector<ChannelId> primes;       // M_p, ascending
    std::vector<ChannelId> non_primes;   // N_p, ascending
};

PrimalitySplit split_primality(std::span<const ChannelId> channels);

// Plain-text deployment: one `id x y` line per node, 6 decimals.
void write_deployment(std::ostream& os, std::span<const Coordinates> positions);
std::vector<Coordinates> read_deployment(std::istream& is);

} // namespace mrdmca
