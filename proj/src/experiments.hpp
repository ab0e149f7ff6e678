// Copyright 2026 The mrdmca-sim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "metrics.hpp"
#include "run_record.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace mrdmca {

inline constexpr std::string_view kVersion = "0.1.0";

/// Termination column of a grid. `Native` resolves per protocol: controlled
/// for mrdmca, baseline (N-1) for everything else.
enum class TerminationChoice { Baseline, Controlled, Full, Native };

TerminationChoice parse_termination_choice(std::string_view name);
std::string_view termination_choice_name(TerminationChoice t) noexcept;
Termination resolve_termination(TerminationChoice t, Protocol p) noexcept;

struct ScenarioGrid {
    std::string name = "run";
    std::vector<Protocol> protocols{Protocol::Mrdmca};
    std::vector<TerminationChoice> terminations{TerminationChoice::Native};
    std::vector<std::size_t> nodes{10};
    std::vector<int> channels{10};
    std::vector<int> similarity{2};
    std::vector<PrParams> pr{PrParams::off()};
    std::size_t runs = 100;
    std::uint64_t seed = 1;
    double range = 100.0;
    Area area;
    std::int64_t max_slots = 50000;
    /// Every cell uses the same deployment and channel sets for a given
    /// (N, C, m, run index), so protocols are compared on identical inputs.
    bool fix_topology = false;
};

/// Built-in grids: `baseline`, `controlled`, `scale`, `smoke`.
ScenarioGrid builtin_grid(std::string_view name);

/// `key = value` lines, comma-separated lists, `#` comments. Keys: name,
/// protocols, terminations, nodes, channels, similarity, pr, runs, seed,
/// area (`side` or `WxH`), range, max_slots, fix_topology.
ScenarioGrid parse_grid(std::istream& is);

/// Applies one `key = value` setting; throws Error(Config) on bad input.
void set_grid_value(ScenarioGrid& grid, std::string_view key, std::string_view value);

/// Throws Error(Config) for empty lists or out-of-range values.
void validate_grid(const ScenarioGrid& grid);

struct Cell {
    std::size_t index = 0;
    TerminationChoice choice = TerminationChoice::Native;
    RunConfig config;   // seed unset
};

/// Cartesian product in the order protocol, termination, N, C, m, PR.
std::vector<Cell> enumerate_cells(const ScenarioGrid& grid);

/// Seeds of one replication.
struct RunSeeds {
    std::uint64_t run = 0;
    std::uint64_t topology = 0;
    std::uint64_t channels = 0;
};

RunSeeds run_seeds(const ScenarioGrid& grid, const Cell& cell, std::size_t run_index);

/// Deploys, assigns channels and simulates one replication.
RunRecord run_replication(const ScenarioGrid& grid, const Cell& cell, std::size_t run_index,
                          std::ostream* trace = nullptr);

struct CellResult {
    Cell cell;
    std::vector<RunRecord> runs;   // run-index order; final tables dropped
    AggregateMetrics metrics;
};

struct GridResult {
    ScenarioGrid grid;
    std::vector<CellResult> cells;
    std::size_t incomplete() const;
};

/// Runs every cell x run on `workers` threads. Output does not depend on the
/// worker count. When `trace` is set, every run's event lines are written to
/// it in (cell, run) order, each run preceded by a `# cell run seed` line.
GridResult run_grid(const ScenarioGrid& grid, std::size_t workers, std::ostream* trace = nullptr);

/// Stable digest of the grid definition, hex.
std::string grid_hash(const ScenarioGrid& grid);

std::string aggregate_csv(const GridResult& result);
std::string per_run_csv(const GridResult& result);

struct AuditReport {
    std::size_t rows = 0;
    std::size_t mismatches = 0;
    std::vector<std::string> problems;   // first few, human-readable
};

/// Re-derives each row's deployment from its topology seed and checks the
/// recorded DNLs and CTM against ground truth.
AuditReport audit_per_run_csv(std::istream& csv);

} // namespace mrdmca
