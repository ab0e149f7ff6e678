// Copyright 2026 The mrdmca-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include "topology.hpp"

#include "error.hpp"
#include "rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace mrdmca {

double distance(const Coordinates& a, const Coordinates& b) noexcept
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

bool is_prime(int n) noexcept
{
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

int smallest_prime_at_least(int n) noexcept
{
    int p = std::max(n, 2);
    while (!is_prime(p)) ++p;
    return p;
}

GroundTopology::GroundTopology(std::vector<Coordinates> positions, double range)
    : positions_(std::move(positions)), range_(range)
{
    if (!(range > 0.0)) throw Error(ErrorKind::InvalidArgument, "transmission range must be positive");
    const std::size_t n = positions_.size();
    adjacency_.assign(n * n, 0);
    direct_.assign(n, {});
    indirect_.assign(n, {});
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            if (within_range(positions_[a], positions_[b], range_)) {
                adjacency_[a * n + b] = adjacency_[b * n + a] = 1;
                direct_[a].push_back(b);
                direct_[b].push_back(a);
            }
        }
    }
    for (auto& d : direct_) std::sort(d.begin(), d.end());

    // BFS from every node; N is small so O(N^3) is fine.
    connected_ = true;
    std::vector<char> seen(n);
    std::vector<NodeId> queue;
    for (NodeId s = 0; s < n; ++s) {
        std::fill(seen.begin(), seen.end(), 0);
        queue.assign(1, s);
        seen[s] = 1;
        for (std::size_t head = 0; head < queue.size(); ++head)
            for (NodeId v : direct_[queue[head]])
                if (!seen[v]) {
                    seen[v] = 1;
                    queue.push_back(v);
                }
        if (queue.size() != n) connected_ = false;
        for (NodeId v = 0; v < n; ++v)
            if (seen[v] && v != s && !adjacency_[s * n + v]) indirect_[s].push_back(v);
    }
}

std::vector<std::pair<NodeId, NodeId>> GroundTopology::edges() const
{
    std::vector<std::pair<NodeId, NodeId>> out;
    for (NodeId a = 0; a < size(); ++a)
        for (NodeId b : direct_[a])
            if (a < b) out.emplace_back(a, b);
    return out;
}

GroundTopology deploy(std::size_t n_nodes, Area area, double range, std::uint64_t seed, std::size_t max_attempts)
{
    if (n_nodes < 2) throw Error(ErrorKind::InvalidArgument, "deploy: need at least 2 nodes");
    if (!(range > 0.0)) throw Error(ErrorKind::InvalidArgument, "deploy: range must be positive");
    if (!(area.width > 0.0) || !(area.height > 0.0))
        throw Error(ErrorKind::InvalidArgument, "deploy: area must have positive extent");

    Rng rng(seed);
    std::uniform_real_distribution<double> ux(0.0, area.width);
    std::uniform_real_distribution<double> uy(0.0, area.height);
    std::vector<Coordinates> pos(n_nodes);
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        for (auto& p : pos) {
            p.x = ux(rng);
            p.y = uy(rng);
        }
        GroundTopology topo(pos, range);
        if (topo.connected()) return topo;
    }
    std::ostringstream msg;
    msg << "deploy: no connected placement of " << n_nodes << " nodes in " << area.width << "x" << area.height
        << " m with range " << range << " m after " << max_attempts << " attempts (density too low)";
    throw Error(ErrorKind::Infeasible, msg.str());
}

std::size_t ChannelAssignment::overlap(NodeId a, NodeId b) const
{
    const auto& sa = sets.at(a);
    const auto& sb = sets.at(b);
    std::size_t k = 0;
    auto ia = sa.begin();
    auto ib = sb.begin();
    while (ia != sa.end() && ib != sb.end()) {
        if (*ia < *ib) ++ia;
        else if (*ib < *ia) ++ib;
        else {
            ++k;
            ++ia;
            ++ib;
        }
    }
    return k;
}

ChannelAssignment assign_channels(std::size_t n_nodes, int pool, int similarity, std::uint64_t seed)
{
    if (pool < 1 || similarity < 1 || similarity > pool)
        throw Error(ErrorKind::InvalidArgument, "assign_channels: need 1 <= m <= C");

    Rng rng(seed);
    std::vector<ChannelId> all;
    for (int c = 1; c <= pool; ++c) all.push_back({c});
    std::shuffle(all.begin(), all.end(), rng);

    ChannelAssignment out;
    out.pool = pool;
    out.similarity = similarity;
    out.common.assign(all.begin(), all.begin() + similarity);
    std::sort(out.common.begin(), out.common.end());
    std::vector<ChannelId> extras(all.begin() + similarity, all.end());
    std::sort(extras.begin(), extras.end());

    std::bernoulli_distribution coin(0.5);
    out.sets.resize(n_nodes);
    for (auto& set : out.sets) {
        set = out.common;
        for (auto c : extras)
            if (coin(rng)) set.push_back(c);
        std::sort(set.begin(), set.end());
    }
    return out;
}

PrimalitySplit split_primality(std::span<const ChannelId> channels)
{
    PrimalitySplit out;
    for (auto c : channels) (is_prime(c.label) ? out.primes : out.non_primes).push_back(c);
    std::sort(out.primes.begin(), out.primes.end());
    std::sort(out.non_primes.begin(), out.non_primes.end());
    return out;
}

void write_deployment(std::ostream& os, std::span<const Coordinates> positions)
{
    char line[96];
    for (std::size_t i = 0; i < positions.size(); ++i) {
        std::snprintf(line, sizeof line, "%zu %.6f %.6f\n", i, positions[i].x, positions[i].y);
        os << line;
    }
}

std::vector<Coordinates> read_deployment(std::istream& is)
{
    std::vector<std::pair<std::size_t, Coordinates>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        std::size_t id;
        Coordinates c;
        std::string rest;
        if (!(ls >> id >> c.x >> c.y) || (ls >> rest))
            throw Error(ErrorKind::Io, "deployment line " + std::to_string(lineno) + ": expected `id x y`");
        rows.emplace_back(id, c);
    }
    std::vector<Coordinates> out(rows.size());
    std::vector<char> seen(rows.size());
    for (const auto& [id, c] : rows) {
        if (id >= rows.size() || seen[id])
            throw Error(ErrorKind::Io, "deployment ids must be a permutation of 0..N-1");
        seen[id] = 1;
        out[id] = c;
    }
    return out;
}

} // namespace mrdmca
