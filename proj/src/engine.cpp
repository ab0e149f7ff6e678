// Copyright 2026 The mrdmca-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include "engine.hpp"

#include "error.hpp"
#include "hopping.hpp"
#include "metrics.hpp"
#include "protocol.hpp"
#include "rng.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <ostream>
#include <sstream>

namespace mrdmca {

std::string cell_key(const RunConfig& cfg)
{
    std::ostringstream os;
    os << protocol_name(cfg.protocol) << '/' << termination_name(cfg.termination) << "/N=" << cfg.nodes
       << "/C=" << cfg.channels << "/m=" << cfg.similarity << "/pr=" << pr_level_name(cfg.pr) << "/r=" << cfg.range
       << "/area=" << cfg.area.width << 'x' << cfg.area.height;
    return os.str();
}

HalfSlotResolution resolve_half_slot(std::span<const ChannelId> selections, ChannelOccupancy& occupancy,
                                     const GroundTopology& topo, std::int64_t half_slot)
{
    std::map<ChannelId, std::vector<NodeId>> by_channel;
    for (NodeId i = 0; i < selections.size(); ++i) by_channel[selections[i]].push_back(i);

    HalfSlotResolution out;
    for (auto& [channel, members] : by_channel) {
        if (members.size() < 2) continue;
        if (occupancy.is_busy(channel, half_slot)) {
            out.deferred.insert(out.deferred.end(), members.begin(), members.end());
            continue;
        }
        HandshakeGroup g;
        g.channel = channel;
        for (std::size_t x = 0; x < members.size(); ++x)
            for (std::size_t y = x + 1; y < members.size(); ++y)
                if (topo.linked(members[x], members[y])) g.pairs.emplace_back(members[x], members[y]);
        if (g.pairs.empty()) continue;
        g.members = std::move(members);
        out.groups.push_back(std::move(g));
    }
    std::sort(out.deferred.begin(), out.deferred.end());
    return out;
}

namespace {

class TraceWriter {
public:
    explicit TraceWriter(std::ostream* os) : os_(os) {}

    void operator()(std::int64_t half_slot, NodeId node, ChannelId channel, const char* event, long long detail) const
    {
        if (!os_) return;
        char line[128];
        std::snprintf(line, sizeof line, "%lld %d %zu %d %s %lld\n", static_cast<long long>(half_slot / 2),
                      static_cast<int>(half_slot % 2) + 1, node, channel.label, event, detail);
        *os_ << line;
    }

    explicit operator bool() const noexcept { return os_ != nullptr; }

private:
    std::ostream* os_;
};

} // namespace

RunRecord run_once(const RunConfig& cfg, const GroundTopology& topo, const ChannelAssignment& chans,
                   std::ostream* trace_stream)
{
    const std::size_t n = topo.size();
    if (n < 2 || n != cfg.nodes) throw Error(ErrorKind::InvalidArgument, "run_once: topology size does not match config");
    if (chans.sets.size() != n) throw Error(ErrorKind::InvalidArgument, "run_once: channel assignment size mismatch");
    if (cfg.max_slots <= 0) throw Error(ErrorKind::InvalidArgument, "run_once: max_slots must be positive");
    if (!topo.connected()) throw Error(ErrorKind::InvalidArgument, "run_once: topology is not connected");

    const ProtocolTraits pt = traits(cfg.protocol);
    const Validation validation = validation_for(cfg.protocol, cfg.termination);
    const TraceWriter trace(trace_stream);

    std::vector<NeighbourTables> tables;
    std::vector<Hopper> hoppers;
    tables.reserve(n);
    hoppers.reserve(n);
    for (NodeId i = 0; i < n; ++i) {
        tables.emplace_back(i, topo.position(i), n, topo.range(), validation);
        hoppers.emplace_back(cfg.protocol, chans.sets[i], Rng(derive_seed(cfg.seed, Stream::Hopping, i)));
    }
    ChannelOccupancy occupancy(cfg.pr, chans.pool, derive_seed(cfg.seed, Stream::PrActivity));
    Rng handshake_rng(derive_seed(cfg.seed, Stream::Handshake));
    std::bernoulli_distribution coin(0.5);

    RunRecord rec;
    rec.cell = cell_key(cfg);
    rec.seed = cfg.seed;
    rec.t_n1.assign(n, kNoMark);
    rec.t_full.assign(n, kNoMark);
    rec.t_term.assign(n, kNoMark);
    rec.dnl_at_term.assign(n, {});
    rec.ptm_at_term.assign(n, kNoMark);

    std::vector<ChannelId> selection(n);
    std::vector<ChannelId> first_choice(n);
    std::vector<std::vector<TableEntry>> pre(n);
    std::vector<char> has_pre(n);
    std::size_t pending = 2 * n;   // outstanding policy + full marks
    const std::int64_t max_half_slots = 2 * cfg.max_slots;
    std::int64_t h = 0;

    for (; h < max_half_slots && pending > 0; ++h) {
        const bool first = (h % 2 == 0);
        for (NodeId i = 0; i < n; ++i) {
            if (first) selection[i] = first_choice[i] = hoppers[i].first_half();
            else selection[i] = hoppers[i].second_half(first_choice[i]);
        }

        const auto res = resolve_half_slot(selection, occupancy, topo, h);
        if (trace)
            for (NodeId i : res.deferred) trace(h, i, selection[i], "busy", -1);

        // Every message in a half-slot carries the sender's tables as of the
        // start of that half-slot, so group handshakes are order-independent.
        std::fill(has_pre.begin(), has_pre.end(), 0);
        for (const auto& g : res.groups)
            for (NodeId i : g.members)
                if (!has_pre[i]) {
                    pre[i] = snapshot(tables[i]);
                    has_pre[i] = 1;
                }
        for (const auto& g : res.groups) {
            for (auto [a, b] : g.pairs) {
                NodeId init = a;
                NodeId resp = b;
                if (pt.exchange == Exchange::Beacon && coin(handshake_rng)) std::swap(init, resp);
                HandshakeMessage req{HandshakeMessage::Kind::Request, init, topo.position(init), pre[init]};
                HandshakeMessage ans{HandshakeMessage::Kind::Response, resp, topo.position(resp), {}};
                if (pt.exchange == Exchange::Mutual) ans.tables = pre[resp];
                receive(tables[resp], req);
                receive(tables[init], ans);
                trace(h, init, g.channel, "handshake", static_cast<long long>(resp));
            }
        }

        const double now = 0.5 * static_cast<double>(h + 1);
        for (NodeId i = 0; i < n; ++i) {
            const auto& t = tables[i];
            const bool all_known = t.known() == n - 1;
            if (all_known && !has_mark(rec.t_n1[i])) {
                rec.t_n1[i] = now;
                trace(h, i, selection[i], "n1", static_cast<long long>(t.dnl_size()));
            }
            if (all_known && !has_mark(rec.t_full[i]) && t.dnl_size() == topo.direct(i).size()) {
                rec.t_full[i] = now;
                --pending;
                trace(h, i, selection[i], "full", static_cast<long long>(t.dnl_size()));
            }
            if (!has_mark(rec.t_term[i])) {
                const bool fire = cfg.termination == Termination::RunToFull ? has_mark(rec.t_full[i])
                                                                            : check_termination(t, cfg.termination, n);
                if (fire) {
                    rec.t_term[i] = now;
                    rec.dnl_at_term[i] = t.dnl();
                    rec.ptm_at_term[i] = ptm(rec.dnl_at_term[i], topo.direct(i));
                    --pending;
                    trace(h, i, selection[i], "terminate", static_cast<long long>(t.idn_size()));
                }
            }
        }
        if (!first)
            for (auto& hop : hoppers) hop.end_slot();
    }

    rec.slots_simulated = 0.5 * static_cast<double>(h);
    rec.completed = (pending == 0);
    if (rec.completed) rec.ctm = ctm(rec.ptm_at_term);
    rec.final_tables = std::move(tables);
    return rec;
}

} // namespace mrdmca
