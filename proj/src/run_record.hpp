// Copyright 2026 The mrdmca-sim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "hopping.hpp"
#include "pr_activity.hpp"
#include "protocol.hpp"
#include "topology.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace mrdmca {

struct RunConfig {
    Protocol protocol = Protocol::Mrdmca;
    Termination termination = Termination::Controlled;
    std::size_t nodes = 10;
    int channels = 10;          // pool size C
    int similarity = 2;         // m
    PrParams pr = PrParams::off();
    double range = 100.0;
    Area area;
    std::int64_t max_slots = 50000;
    std::uint64_t seed = 1;
};

/// Identity of the scenario cell a run belongs to (everything but the seed).
std::string cell_key(const RunConfig& cfg);

inline constexpr double kNoMark = std::numeric_limits<double>::quiet_NaN();
inline bool has_mark(double t) noexcept { return !std::isnan(t); }

/// Outcome of one replication. Times are in slots with half-slot resolution;
/// a missing mark is NaN.
struct RunRecord {
    std::string cell;
    std::uint64_t seed = 0;
    std::uint64_t topology_seed = 0;
    bool completed = false;
    double slots_simulated = 0.0;

    std::vector<double> t_n1;     // first |DNL u INL| = N-1
    std::vector<double> t_full;   // first N-1 with DNL = DNL*
    std::vector<double> t_term;   // policy termination

    /// DNL of each node frozen at its policy termination point.
    std::vector<std::vector<NodeId>> dnl_at_term;
    std::vector<double> ptm_at_term;
    double ctm = kNoMark;

    /// Tables when the simulation stopped.
    std::vector<NeighbourTables> final_tables;
};

} // namespace mrdmca
