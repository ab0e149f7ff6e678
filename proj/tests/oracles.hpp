// Copyright 2026 The mrdmca-sim Authors
// SPDX-License-Identifier: Apache-2.0

// Independent re-implementations used as test oracles. They deliberately
// avoid the library's helpers.

#pragma once

#include <cstddef>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

struct Point {
    double x;
    double y;
};

/// Pairs (a < b) with squared distance <= range^2.
std::set<std::pair<std::size_t, std::size_t>> unit_disk_edges(const std::vector<Point>& pts, double range);

/// 100 * |dnl n truth| / |truth| with truth from brute force; 100 when empty.
double ptm(std::size_t node, const std::vector<std::size_t>& dnl, const std::vector<Point>& pts, double range);

/// Mean of ptm over every node.
double ctm(const std::vector<std::vector<std::size_t>>& dnls, const std::vector<Point>& pts, double range);

/// Dual-clock channel labels over `slots` slots with fixed rates, computed
/// from closed-form index arithmetic. `labels` ascending.
std::vector<std::pair<int, int>> dual_clock(const std::vector<int>& labels, std::size_t j1, std::size_t r1,
                                            std::size_t j2, std::size_t r2, std::size_t slots);

bool prime(int n);

} // namespace oracle
