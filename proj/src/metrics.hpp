// Copyright 2026 The mrdmca-sim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "run_record.hpp"
#include "topology.hpp"

#include <cstddef>
#include <span>

namespace mrdmca {

/// Per-node topology match, in percent: 100 |DNL n DNL*| / |DNL*|.
/// An empty ground list counts as fully matched.
double ptm(std::span<const NodeId> discovered, std::span<const NodeId> ground);

/// Complete topology match: mean PTM over the nodes of one run.
double ctm(std::span<const double> ptms);

enum class TimeMark { N1, Full, Policy };

/// Mean over runs of the per-run node-mean of `mark`. All records must be
/// completed and belong to the same cell.
double attr(std::span<const RunRecord> runs, TimeMark mark);

/// attr(Full) - attr(reference). The default reference is the N-1 mark.
double ptdd(std::span<const RunRecord> runs, TimeMark reference = TimeMark::N1);

struct AggregateMetrics {
    std::size_t runs = 0;         // completed runs used in the means
    std::size_t incomplete = 0;   // excluded from the means
    double attr_policy = 0.0;
    double attr_n1 = 0.0;
    double attr_full = 0.0;
    double atm = 0.0;
    double ptdd = 0.0;
    // 95% normal-approximation half-widths over runs.
    double attr_ci95 = 0.0;
    double atm_ci95 = 0.0;
    double ptdd_ci95 = 0.0;       // of the paired per-run difference
};

/// Aggregates one cell; incomplete runs are counted and skipped. PTDD is
/// measured from `ptdd_reference` to the Full mark.
AggregateMetrics aggregate(std::span<const RunRecord> runs, TimeMark ptdd_reference = TimeMark::N1);

} // namespace mrdmca
