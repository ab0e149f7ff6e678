// Copyright 2026 The mrdmca-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include "mrdmca/mrdmca.h"

#include "error.hpp"
#include "experiments.hpp"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

struct mrd_grid {
    mrdmca::ScenarioGrid grid;
};

struct mrd_results {
    std::string aggregate;
    std::string per_run;
    size_t incomplete = 0;
};

namespace {

thread_local std::string last_error;

mrd_status fail(mrd_status s, const std::string& msg)
{
    last_error = msg;
    return s;
}

mrd_status status_of(mrdmca::ErrorKind k)
{
    switch (k) {
    case mrdmca::ErrorKind::InvalidArgument: return MRD_INVALID_ARGUMENT;
    case mrdmca::ErrorKind::Config: return MRD_CONFIG;
    case mrdmca::ErrorKind::Infeasible: return MRD_INFEASIBLE;
    case mrdmca::ErrorKind::Aggregation: return MRD_AGGREGATION;
    case mrdmca::ErrorKind::Io: return MRD_IO;
    }
    return MRD_INTERNAL;
}

template <typename F>
mrd_status guarded(F&& f)
{
    try {
        last_error.clear();
        return f();
    } catch (const mrdmca::Error& e) {
        return fail(status_of(e.kind()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(MRD_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(MRD_INTERNAL, e.what());
    } catch (...) {
        return fail(MRD_INTERNAL, "unknown error");
    }
}

char* dup_string(const std::string& s)
{
    auto* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

} // namespace

extern "C" {

MRD_API const char* mrd_last_error(void)
{
    return last_error.c_str();
}

MRD_API const char* mrd_status_string(mrd_status status)
{
    switch (status) {
    case MRD_OK: return "ok";
    case MRD_INVALID_ARGUMENT: return "invalid argument";
    case MRD_CONFIG: return "configuration error";
    case MRD_INFEASIBLE: return "infeasible deployment";
    case MRD_IO: return "i/o error";
    case MRD_AGGREGATION: return "aggregation error";
    case MRD_AUDIT_MISMATCH: return "audit mismatch";
    case MRD_INTERNAL: return "internal error";
    }
    return "unknown status";
}

MRD_API const char* mrd_version(void)
{
    static const std::string v(mrdmca::kVersion);
    return v.c_str();
}

MRD_API mrd_status mrd_grid_create(mrd_grid** out)
{
    if (!out) return fail(MRD_INVALID_ARGUMENT, "null out pointer");
    return guarded([&] {
        *out = new mrd_grid{};
        return MRD_OK;
    });
}

MRD_API mrd_status mrd_grid_create_builtin(const char* name, mrd_grid** out)
{
    if (!name || !out) return fail(MRD_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        *out = new mrd_grid{mrdmca::builtin_grid(name)};
        return MRD_OK;
    });
}

MRD_API mrd_status mrd_grid_parse_config(const char* path, mrd_grid** out)
{
    if (!path || !out) return fail(MRD_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        std::ifstream in(path);
        if (!in) return fail(MRD_IO, std::string("cannot open config `") + path + "`");
        *out = new mrd_grid{mrdmca::parse_grid(in)};
        return MRD_OK;
    });
}

MRD_API mrd_status mrd_grid_set(mrd_grid* grid, const char* key, const char* value)
{
    if (!grid || !key || !value) return fail(MRD_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        auto copy = grid->grid;
        mrdmca::set_grid_value(copy, key, value);
        grid->grid = std::move(copy);
        return MRD_OK;
    });
}

MRD_API mrd_status mrd_grid_destroy(mrd_grid* grid)
{
    if (!grid) return fail(MRD_INVALID_ARGUMENT, "null grid");
    delete grid;
    return MRD_OK;
}

MRD_API mrd_status mrd_grid_run(const mrd_grid* grid, unsigned workers, const char* trace_path, mrd_results** out)
{
    if (!grid || !out) return fail(MRD_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        std::ofstream trace;
        if (trace_path) {
            trace.open(trace_path);
            if (!trace) return fail(MRD_IO, std::string("cannot open trace file `") + trace_path + "`");
        }
        auto r = mrdmca::run_grid(grid->grid, workers, trace_path ? &trace : nullptr);
        auto* res = new mrd_results{mrdmca::aggregate_csv(r), mrdmca::per_run_csv(r), r.incomplete()};
        *out = res;
        return MRD_OK;
    });
}

MRD_API mrd_status mrd_results_aggregate_csv(const mrd_results* results, char** out)
{
    if (!results || !out) return fail(MRD_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        *out = dup_string(results->aggregate);
        return MRD_OK;
    });
}

MRD_API mrd_status mrd_results_per_run_csv(const mrd_results* results, char** out)
{
    if (!results || !out) return fail(MRD_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        *out = dup_string(results->per_run);
        return MRD_OK;
    });
}

MRD_API mrd_status mrd_results_incomplete_count(const mrd_results* results, size_t* out)
{
    if (!results || !out) return fail(MRD_INVALID_ARGUMENT, "null argument");
    *out = results->incomplete;
    return MRD_OK;
}

MRD_API mrd_status mrd_results_destroy(mrd_results* results)
{
    if (!results) return fail(MRD_INVALID_ARGUMENT, "null results");
    delete results;
    return MRD_OK;
}

MRD_API void mrd_string_free(char* s)
{
    std::free(s);
}

MRD_API mrd_status mrd_audit_per_run_csv(const char* path, size_t* rows, char** report)
{
    if (!path) return fail(MRD_INVALID_ARGUMENT, "null path");
    return guarded([&] {
        std::ifstream in(path);
        if (!in) return fail(MRD_IO, std::string("cannot open `") + path + "`");
        const auto rep = mrdmca::audit_per_run_csv(in);
        if (rows) *rows = rep.rows;
        std::ostringstream os;
        os << "rows=" << rep.rows << " mismatches=" << rep.mismatches << '\n';
        for (const auto& p : rep.problems) os << p << '\n';
        if (report) *report = dup_string(os.str());
        if (rep.mismatches > 0) return fail(MRD_AUDIT_MISMATCH, std::to_string(rep.mismatches) + " audit mismatches");
        return MRD_OK;
    });
}

MRD_API mrd_status mrd_deploy_export(size_t nodes, double area, double range, uint64_t seed, const char* path)
{
    if (!path) return fail(MRD_INVALID_ARGUMENT, "null path");
    if (!(range > 0.0)) return fail(MRD_INVALID_ARGUMENT, "range must be positive");
    return guarded([&] {
        mrdmca::Area a;
        if (area > 0.0) a = {area, area};
        const auto topo = mrdmca::deploy(nodes, a, range, seed);
        std::ofstream outf(path);
        if (!outf) return fail(MRD_IO, std::string("cannot open `") + path + "`");
        mrdmca::write_deployment(outf, topo.positions());
        if (!outf) return fail(MRD_IO, "write failed");
        return MRD_OK;
    });
}

} // extern "C"
