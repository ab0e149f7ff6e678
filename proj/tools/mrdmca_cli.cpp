// Copyright 2026 The mrdmca-sim Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end over the C API.

#include "mrdmca/mrdmca.h"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace {

struct Failure {
    mrd_status status;
};

void check(mrd_status s)
{
    if (s != MRD_OK) {
        std::cerr << "mrdmca: " << mrd_status_string(s);
        if (*mrd_last_error()) std::cerr << ": " << mrd_last_error();
        std::cerr << '\n';
        throw Failure{s};
    }
}

struct OutputOptions {
    unsigned workers = 1;
    std::string out;
    std::string per_run;
    std::string trace;
};

void add_output_options(CLI::App* cmd, OutputOptions& o)
{
    cmd->add_option("--workers", o.workers, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--out", o.out, "aggregate CSV path (default stdout)");
    cmd->add_option("--per-run", o.per_run, "per-run CSV path");
    cmd->add_option("--trace", o.trace, "event trace path");
}

// Grid keys settable from flags; an unset flag leaves the grid value alone.
struct GridOverrides {
    std::optional<std::string> protocol, termination, nodes, channels, similarity, pr, runs, seed, area, range,
        max_slots;
    bool fix_topology = false;

    void apply(mrd_grid* g) const
    {
        const std::pair<const char*, const std::optional<std::string>*> keys[] = {
            {"protocols", &protocol}, {"terminations", &termination}, {"nodes", &nodes},
            {"channels", &channels},  {"similarity", &similarity},    {"pr", &pr},
            {"runs", &runs},          {"seed", &seed},                {"area", &area},
            {"range", &range},        {"max_slots", &max_slots},
        };
        for (const auto& [key, val] : keys)
            if (*val) check(mrd_grid_set(g, key, (*val)->c_str()));
        if (fix_topology) check(mrd_grid_set(g, "fix_topology", "1"));
    }
};

void add_grid_options(CLI::App* cmd, GridOverrides& o, bool cell_axes)
{
    if (cell_axes) {
        cmd->add_option("--protocol", o.protocol, "rcs|mca|emca|mdmca|mrdmca (comma list allowed)");
        cmd->add_option("--termination", o.termination, "baseline|controlled|full|native");
        cmd->add_option("--nodes", o.nodes, "N");
        cmd->add_option("--channels", o.channels, "channel pool size C");
        cmd->add_option("--similarity", o.similarity, "common channels m");
        cmd->add_option("--pr", o.pr, "off|high|lambda_x:lambda_y");
        cmd->add_option("--area", o.area, "deployment side in m, or WxH");
        cmd->add_option("--range", o.range, "transmission range in m");
        cmd->add_option("--max-slots", o.max_slots, "per-run safety cap");
    }
    cmd->add_option("--runs", o.runs, "replications per cell");
    cmd->add_option("--seed", o.seed, "master seed");
    cmd->add_flag("--fix-topology", o.fix_topology, "share deployments across cells");
}

void write_text(const std::string& path, const char* text)
{
    if (path.empty()) {
        std::fputs(text, stdout);
        return;
    }
    std::ofstream f(path, std::ios::binary);
    f << text;
    if (!f) {
        std::cerr << "mrdmca: cannot write `" << path << "`\n";
        throw Failure{MRD_IO};
    }
}

void run_and_write(mrd_grid* grid, const OutputOptions& o)
{
    mrd_results* res = nullptr;
    check(mrd_grid_run(grid, o.workers, o.trace.empty() ? nullptr : o.trace.c_str(), &res));
    char* agg = nullptr;
    char* per = nullptr;
    size_t incomplete = 0;
    mrd_status s = mrd_results_aggregate_csv(res, &agg);
    if (s == MRD_OK && !o.per_run.empty()) s = mrd_results_per_run_csv(res, &per);
    if (s == MRD_OK) s = mrd_results_incomplete_count(res, &incomplete);
    mrd_results_destroy(res);
    try {
        check(s);
        write_text(o.out, agg);
        if (per) write_text(o.per_run, per);
    } catch (...) {
        mrd_string_free(agg);
        mrd_string_free(per);
        throw;
    }
    mrd_string_free(agg);
    mrd_string_free(per);
    if (incomplete > 0) std::cerr << "mrdmca: warning: " << incomplete << " run(s) hit max_slots and were excluded\n";
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Monte-Carlo simulator for multihop channel-hopping rendezvous and neighbour discovery"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(mrd_version()));

    OutputOptions out;
    GridOverrides run_o, sweep_o, preset_o;

    auto* run = app.add_subcommand("run", "simulate a single cell (or a small grid via comma lists)");
    add_grid_options(run, run_o, true);
    add_output_options(run, out);

    std::string config;
    auto* sweep = app.add_subcommand("sweep", "simulate the grid described by a config file");
    sweep->add_option("--config", config, "grid file of `key = value` lines")->required()->check(CLI::ExistingFile);
    add_grid_options(sweep, sweep_o, false);
    add_output_options(sweep, out);

    std::string preset_name;
    auto* preset = app.add_subcommand("preset", "simulate a built-in grid");
    preset->add_option("grid", preset_name, "baseline|controlled|scale|smoke")
        ->required()
        ->check(CLI::IsMember({"baseline", "controlled", "scale", "smoke"}));
    add_grid_options(preset, preset_o, false);
    add_output_options(preset, out);

    std::string audit_path;
    auto* audit = app.add_subcommand("audit", "re-validate a per-run CSV against ground-truth deployments");
    audit->add_option("csv", audit_path, "per-run CSV")->required()->check(CLI::ExistingFile);

    std::size_t dep_nodes = 10;
    double dep_area = 0.0;
    double dep_range = 100.0;
    std::uint64_t dep_seed = 1;
    std::string dep_out;
    auto* dep = app.add_subcommand("deploy", "export one connected deployment as `id x y` lines");
    dep->add_option("--nodes", dep_nodes, "N")->check(CLI::Range(2, 100000));
    dep->add_option("--area", dep_area, "square side in m (default: simulator default)");
    dep->add_option("--range", dep_range, "transmission range in m");
    dep->add_option("--seed", dep_seed, "topology seed");
    dep->add_option("--out", dep_out, "output path")->required();

    CLI11_PARSE(app, argc, argv);

    mrd_grid* grid = nullptr;
    try {
        if (*run) {
            check(mrd_grid_create(&grid));
            run_o.apply(grid);
            run_and_write(grid, out);
        } else if (*sweep) {
            check(mrd_grid_parse_config(config.c_str(), &grid));
            sweep_o.apply(grid);
            run_and_write(grid, out);
        } else if (*preset) {
            check(mrd_grid_create_builtin(preset_name.c_str(), &grid));
            preset_o.apply(grid);
            run_and_write(grid, out);
        } else if (*audit) {
            size_t rows = 0;
            char* report = nullptr;
            const mrd_status s = mrd_audit_per_run_csv(audit_path.c_str(), &rows, &report);
            if (report) std::fputs(report, stdout);
            mrd_string_free(report);
            check(s);
        } else if (*dep) {
            check(mrd_deploy_export(dep_nodes, dep_area, dep_range, dep_seed, dep_out.c_str()));
        }
    } catch (const Failure& f) {
        if (grid) mrd_grid_destroy(grid);
        return f.status == MRD_CONFIG || f.status == MRD_INVALID_ARGUMENT ? 2 : 1;
    }
    if (grid) mrd_grid_destroy(grid);
    return 0;
}
