// Copyright 2026 The mrdmca-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include "metrics.hpp"

#include "error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace mrdmca {

double ptm(std::span<const NodeId> discovered, std::span<const NodeId> ground)
{
    if (ground.empty()) return 100.0;
    std::size_t hit = 0;
    for (NodeId g : ground)
        if (std::find(discovered.begin(), discovered.end(), g) != discovered.end()) ++hit;
    return 100.0 * static_cast<double>(hit) / static_cast<double>(ground.size());
}

double ctm(std::span<const double> ptms)
{
    if (ptms.empty()) throw Error(ErrorKind::Aggregation, "ctm: no nodes");
    return std::accumulate(ptms.begin(), ptms.end(), 0.0) / static_cast<double>(ptms.size());
}

namespace {

const std::vector<double>& marks(const RunRecord& r, TimeMark m)
{
    switch (m) {
    case TimeMark::N1: return r.t_n1;
    case TimeMark::Full: return r.t_full;
    case TimeMark::Policy: return r.t_term;
    }
    return r.t_term;
}

double node_mean(const RunRecord& r, TimeMark m)
{
    const auto& v = marks(r, m);
    if (v.empty()) throw Error(ErrorKind::Aggregation, "run record has no nodes");
    double sum = 0.0;
    for (double t : v) {
        if (!has_mark(t)) throw Error(ErrorKind::Aggregation, "run record is missing a time mark");
        sum += t;
    }
    return sum / static_cast<double>(v.size());
}

void check_cell(std::span<const RunRecord> runs)
{
    if (runs.empty()) throw Error(ErrorKind::Aggregation, "no run records to aggregate");
    for (const auto& r : runs)
        if (r.cell != runs.front().cell)
            throw Error(ErrorKind::Aggregation, "refusing to aggregate records from different cells: `" +
                                                    runs.front().cell + "` vs `" + r.cell + "`");
}

struct MeanCi {
    double mean = 0.0;
    double ci95 = 0.0;
};

MeanCi mean_ci(const std::vector<double>& xs)
{
    MeanCi out;
    if (xs.empty()) return out;
    const double n = static_cast<double>(xs.size());
    out.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - out.mean) * (x - out.mean);
        out.ci95 = 1.96 * std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
    }
    return out;
}

} // namespace

double attr(std::span<const RunRecord> runs, TimeMark mark)
{
    check_cell(runs);
    double sum = 0.0;
    for (const auto& r : runs) {
        if (!r.completed) throw Error(ErrorKind::Aggregation, "attr: incomplete run in aggregation");
        sum += node_mean(r, mark);
    }
    return sum / static_cast<double>(runs.size());
}

double ptdd(std::span<const RunRecord> runs, TimeMark reference)
{
    return attr(runs, TimeMark::Full) - attr(runs, reference);
}

AggregateMetrics aggregate(std::span<const RunRecord> runs, TimeMark ptdd_reference)
{
    check_cell(runs);
    std::vector<RunRecord const*> done;
    AggregateMetrics out;
    for (const auto& r : runs) {
        if (r.completed) done.push_back(&r);
        else ++out.incomplete;
    }
    out.runs = done.size();
    if (done.empty()) {
        out.attr_policy = out.attr_n1 = out.attr_full = out.atm = out.ptdd = kNoMark;
        out.attr_ci95 = out.atm_ci95 = out.ptdd_ci95 = kNoMark;
        return out;
    }

    std::vector<double> policy, n1, full, ctms, gap;
    for (const auto* r : done) {
        policy.push_back(node_mean(*r, TimeMark::Policy));
        n1.push_back(node_mean(*r, TimeMark::N1));
        full.push_back(node_mean(*r, TimeMark::Full));
        gap.push_back(full.back() - node_mean(*r, ptdd_reference));
        ctms.push_back(r->ctm);
    }
    const auto p = mean_ci(policy);
    const auto a = mean_ci(ctms);
    const auto g = mean_ci(gap);
    out.attr_policy = p.mean;
    out.attr_ci95 = p.ci95;
    out.attr_n1 = mean_ci(n1).mean;
    out.attr_full = mean_ci(full).mean;
    out.atm = a.mean;
    out.atm_ci95 = a.ci95;
    out.ptdd = g.mean;
    out.ptdd_ci95 = g.ci95;
    return out;
}

} // namespace mrdmca
