// Copyright 2026 The mrdmca-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include "experiments.hpp"

#include "engine.hpp"
#include "error.hpp"
#include "rng.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <istream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

namespace mrdmca {

TerminationChoice parse_termination_choice(std::string_view name)
{
    if (name == "baseline") return TerminationChoice::Baseline;
    if (name == "controlled") return TerminationChoice::Controlled;
    if (name == "full") return TerminationChoice::Full;
    if (name == "native") return TerminationChoice::Native;
    throw Error(ErrorKind::Config, "unknown termination `" + std::string(name) + "` (baseline|controlled|full|native)");
}

std::string_view termination_choice_name(TerminationChoice t) noexcept
{
    switch (t) {
    case TerminationChoice::Baseline: return "baseline";
    case TerminationChoice::Controlled: return "controlled";
    case TerminationChoice::Full: return "full";
    case TerminationChoice::Native: return "native";
    }
    return "?";
}

Termination resolve_termination(TerminationChoice t, Protocol p) noexcept
{
    switch (t) {
    case TerminationChoice::Baseline: return Termination::Baseline;
    case TerminationChoice::Controlled: return Termination::Controlled;
    case TerminationChoice::Full: return Termination::RunToFull;
    case TerminationChoice::Native: break;
    }
    return p == Protocol::Mrdmca ? Termination::Controlled : Termination::Baseline;
}

ScenarioGrid builtin_grid(std::string_view name)
{
    ScenarioGrid g;
    g.name = std::string(name);
    g.nodes = {3, 10};
    g.channels = {10};
    g.similarity = {2, 5};
    g.pr = {PrParams::off(), PrParams::high()};
    g.runs = 1000;
    if (name == "baseline") {
        g.protocols = {Protocol::Rcs, Protocol::Mca, Protocol::Emca, Protocol::Mdmca, Protocol::Mrdmca};
        g.terminations = {TerminationChoice::Native};
    } else if (name == "controlled") {
        g.protocols = {Protocol::Rcs, Protocol::Mca, Protocol::Emca, Protocol::Mrdmca};
        g.terminations = {TerminationChoice::Controlled};
    } else if (name == "scale") {
        g.protocols = {Protocol::Rcs, Protocol::Mca, Protocol::Emca, Protocol::Mrdmca};
        g.terminations = {TerminationChoice::Controlled};
        g.nodes = {20};
        g.channels = {20};
    } else if (name == "smoke") {
        g.terminations = {TerminationChoice::Native};
        g.nodes = {3};
        g.similarity = {5};
        g.pr = {PrParams::off()};
        g.runs = 10;
    } else {
        throw Error(ErrorKind::Config, "unknown built-in grid `" + std::string(name) + "` (baseline|controlled|scale|smoke)");
    }
    return g;
}

namespace {

std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_list(std::string_view s)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = s.find(',', start);
        auto item = trim(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (item.empty()) throw Error(ErrorKind::Config, "empty list item in `" + std::string(s) + "`");
        out.push_back(item);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

template <typename T>
T parse_number(std::string_view key, std::string_view s)
{
    T v{};
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw Error(ErrorKind::Config, "bad value `" + std::string(s) + "` for `" + std::string(key) + "`");
    return v;
}

template <typename T, typename F>
std::vector<T> parse_list(std::string_view value, F f)
{
    std::vector<T> out;
    for (auto item : split_list(value)) out.push_back(f(item));
    return out;
}

bool parse_bool(std::string_view key, std::string_view s)
{
    if (s == "1" || s == "true" || s == "yes") return true;
    if (s == "0" || s == "false" || s == "no") return false;
    throw Error(ErrorKind::Config, "bad boolean `" + std::string(s) + "` for `" + std::string(key) + "`");
}

Area parse_area(std::string_view s)
{
    const auto x = s.find('x');
    if (x == std::string_view::npos) {
        const double side = parse_number<double>("area", s);
        return {side, side};
    }
    return {parse_number<double>("area", trim(s.substr(0, x))), parse_number<double>("area", trim(s.substr(x + 1)))};
}

} // namespace

void set_grid_value(ScenarioGrid& g, std::string_view key, std::string_view value)
{
    value = trim(value);
    if (key == "name") {
        if (value.empty() || value.find_first_of(",\n") != std::string_view::npos)
            throw Error(ErrorKind::Config, "name must be non-empty and contain no commas");
        g.name = std::string(value);
    } else if (key == "protocols") {
        g.protocols = parse_list<Protocol>(value, parse_protocol);
    } else if (key == "terminations") {
        g.terminations = parse_list<TerminationChoice>(value, parse_termination_choice);
    } else if (key == "nodes") {
        g.nodes = parse_list<std::size_t>(value, [&](auto s) { return parse_number<std::size_t>(key, s); });
    } else if (key == "channels") {
        g.channels = parse_list<int>(value, [&](auto s) { return parse_number<int>(key, s); });
    } else if (key == "similarity") {
        g.similarity = parse_list<int>(value, [&](auto s) { return parse_number<int>(key, s); });
    } else if (key == "pr") {
        g.pr = parse_list<PrParams>(value, [](auto s) {
            try {
                return parse_pr_level(s);
            } catch (const Error& e) {
                throw Error(ErrorKind::Config, e.what());
            }
        });
    } else if (key == "runs") {
        g.runs = parse_number<std::size_t>(key, value);
    } else if (key == "seed") {
        g.seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "area") {
        g.area = parse_area(value);
    } else if (key == "range") {
        g.range = parse_number<double>(key, value);
    } else if (key == "max_slots") {
        g.max_slots = parse_number<std::int64_t>(key, value);
    } else if (key == "fix_topology") {
        g.fix_topology = parse_bool(key, value);
    } else {
        throw Error(ErrorKind::Config, "unknown key `" + std::string(key) + "`");
    }
}

ScenarioGrid parse_grid(std::istream& is)
{
    ScenarioGrid g;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::string_view l = line;
        if (auto hash = l.find('#'); hash != std::string_view::npos) l = l.substr(0, hash);
        l = trim(l);
        if (l.empty()) continue;
        const auto eq = l.find('=');
        if (eq == std::string_view::npos)
            throw Error(ErrorKind::Config, "line " + std::to_string(lineno) + ": expected `key = value`");
        try {
            set_grid_value(g, trim(l.substr(0, eq)), l.substr(eq + 1));
        } catch (const Error& e) {
            throw Error(ErrorKind::Config, "line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    validate_grid(g);
    return g;
}

void validate_grid(const ScenarioGrid& g)
{
    auto fail = [](const std::string& m) { throw Error(ErrorKind::Config, m); };
    if (g.protocols.empty() || g.terminations.empty() || g.nodes.empty() || g.channels.empty() ||
        g.similarity.empty() || g.pr.empty())
        fail("every grid axis needs at least one value");
    if (g.runs == 0) fail("runs must be positive");
    if (!(g.range > 0.0)) fail("range must be positive");
    if (!(g.area.width > 0.0) || !(g.area.height > 0.0)) fail("area must be positive");
    if (g.max_slots <= 0) fail("max_slots must be positive");
    for (auto n : g.nodes)
        if (n < 2) fail("nodes must be at least 2");
    for (int c : g.channels)
        if (c < 1) fail("channels must be at least 1");
    for (int m : g.similarity) {
        if (m < 1) fail("similarity must be at least 1");
        for (int c : g.channels)
            if (m > c) fail("similarity " + std::to_string(m) + " exceeds channel pool " + std::to_string(c));
    }
}

std::vector<Cell> enumerate_cells(const ScenarioGrid& g)
{
    validate_grid(g);
    std::vector<Cell> out;
    for (auto p : g.protocols)
        for (auto t : g.terminations)
            for (auto n : g.nodes)
                for (int c : g.channels)
                    for (int m : g.similarity)
                        for (const auto& pr : g.pr) {
                            Cell cell;
                            cell.index = out.size();
                            cell.choice = t;
                            auto& cfg = cell.config;
                            cfg.protocol = p;
                            cfg.termination = resolve_termination(t, p);
                            cfg.nodes = n;
                            cfg.channels = c;
                            cfg.similarity = m;
                            cfg.pr = pr;
                            cfg.range = g.range;
                            cfg.area = g.area;
                            cfg.max_slots = g.max_slots;
                            out.push_back(cell);
                        }
    return out;
}

namespace {

constexpr std::uint64_t kFixedTopologyTag = 0x746F706FULL;

} // namespace

RunSeeds run_seeds(const ScenarioGrid& grid, const Cell& cell, std::size_t run_index)
{
    RunSeeds s;
    s.run = derive_seed(grid.seed, {cell.index, run_index});
    if (grid.fix_topology) {
        const std::uint64_t shared = derive_seed(grid.seed, {kFixedTopologyTag, run_index});
        s.topology = derive_seed(shared, Stream::Topology);
        s.channels = derive_seed(shared, Stream::Channels);
    } else {
        s.topology = derive_seed(s.run, Stream::Topology);
        s.channels = derive_seed(s.run, Stream::Channels);
    }
    return s;
}

RunRecord run_replication(const ScenarioGrid& grid, const Cell& cell, std::size_t run_index, std::ostream* trace)
{
    const RunSeeds seeds = run_seeds(grid, cell, run_index);
    RunConfig cfg = cell.config;
    cfg.seed = seeds.run;
    const auto topo = deploy(cfg.nodes, cfg.area, cfg.range, seeds.topology);
    const auto chans = assign_channels(cfg.nodes, cfg.channels, cfg.similarity, seeds.channels);
    RunRecord rec = run_once(cfg, topo, chans, trace);
    rec.topology_seed = seeds.topology;
    rec.final_tables.clear();
    rec.final_tables.shrink_to_fit();
    return rec;
}

std::size_t GridResult::incomplete() const
{
    std::size_t k = 0;
    for (const auto& c : cells) k += c.metrics.incomplete;
    return k;
}

GridResult run_grid(const ScenarioGrid& grid, std::size_t workers, std::ostream* trace)
{
    GridResult out;
    out.grid = grid;
    const auto cells = enumerate_cells(grid);
    const std::size_t total = cells.size() * grid.runs;
    std::vector<RunRecord> records(total);
    std::vector<std::string> traces(trace ? total : 0);

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto work = [&] {
        for (std::size_t k; (k = next.fetch_add(1)) < total;) {
            try {
                const auto& cell = cells[k / grid.runs];
                if (trace) {
                    std::ostringstream ts;
                    records[k] = run_replication(grid, cell, k % grid.runs, &ts);
                    traces[k] = ts.str();
                } else {
                    records[k] = run_replication(grid, cell, k % grid.runs);
                }
            } catch (...) {
                std::lock_guard lock(failure_mu);
                if (!failure) failure = std::current_exception();
                next.store(total);
            }
        }
    };
    workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(total, 1));
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    for (const auto& cell : cells) {
        CellResult cr;
        cr.cell = cell;
        auto first = records.begin() + static_cast<std::ptrdiff_t>(cell.index * grid.runs);
        cr.runs.assign(std::make_move_iterator(first), std::make_move_iterator(first + static_cast<std::ptrdiff_t>(grid.runs)));
        // PTDD is measured from each protocol's own stopping point; RunToFull
        // cells keep the N-1 reference.
        cr.metrics = aggregate(cr.runs, cell.config.termination == Termination::RunToFull ? TimeMark::N1
                                                                                         : TimeMark::Policy);
        if (trace)
            for (std::size_t r = 0; r < grid.runs; ++r) {
                *trace << "# " << cell.index << ' ' << r << ' ' << cr.runs[r].seed << '\n';
                *trace << traces[cell.index * grid.runs + r];
            }
        out.cells.push_back(std::move(cr));
    }
    return out;
}

namespace {

std::string fmt4(double v)
{
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::string fmt_g(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string canonical(const ScenarioGrid& g)
{
    std::ostringstream os;
    os << "name=" << g.name << ";protocols=";
    for (auto p : g.protocols) os << protocol_name(p) << ',';
    os << ";terminations=";
    for (auto t : g.terminations) os << termination_choice_name(t) << ',';
    os << ";nodes=";
    for (auto n : g.nodes) os << n << ',';
    os << ";channels=";
    for (auto c : g.channels) os << c << ',';
    os << ";similarity=";
    for (auto m : g.similarity) os << m << ',';
    os << ";pr=";
    for (const auto& p : g.pr) os << (p.enabled ? fmt_g(p.lambda_x) + ":" + fmt_g(p.lambda_y) : "off") << ',';
    os << ";runs=" << g.runs << ";seed=" << g.seed << ";range=" << fmt_g(g.range) << ";area=" << fmt_g(g.area.width)
       << 'x' << fmt_g(g.area.height) << ";max_slots=" << g.max_slots << ";fix_topology=" << g.fix_topology;
    return os.str();
}

std::string metadata(const GridResult& r)
{
    const auto& g = r.grid;
    std::ostringstream os;
    os << "# mrdmca-sim " << kVersion << '\n';
    os << "# grid " << g.name << ' ' << grid_hash(g) << '\n';
    os << "# seed=" << g.seed << " runs=" << g.runs << " area=" << fmt_g(g.area.width) << 'x' << fmt_g(g.area.height)
       << " range=" << fmt_g(g.range) << " max_slots=" << g.max_slots << " fix_topology=" << g.fix_topology << '\n';
    os << "# channels=pooled-common-m-plus-half-extras dmca_rate_period=|m_i|+1_slots mca_rate_period=2p_half_slots"
          " gossip=rcs,mca:beacon;emca,mdmca,mrdmca:mutual t_full=first_n1_with_sound_complete_dnl ptdd=full_minus_policy(full_mode:minus_n1)"
          " pr_high=on8.5/off1.5 ci=normal95\n";
    os << "# incomplete=" << r.incomplete() << '\n';
    for (const auto& c : r.cells)
        if (c.metrics.incomplete > 0)
            os << "# incomplete cell=" << cell_key(c.cell.config) << " count=" << c.metrics.incomplete << '\n';
    return os.str();
}

void cell_columns(std::ostream& os, const ScenarioGrid& g, const Cell& c)
{
    const auto& cfg = c.config;
    os << g.name << ',' << protocol_name(cfg.protocol) << ',' << termination_name(cfg.termination) << ',' << cfg.nodes
       << ',' << cfg.channels << ',' << cfg.similarity << ',' << pr_level_name(cfg.pr);
}

} // namespace

std::string grid_hash(const ScenarioGrid& grid)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : canonical(grid)) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string aggregate_csv(const GridResult& r)
{
    std::ostringstream os;
    os << metadata(r);
    os << "scenario,protocol,termination,N,C,m,pr,runs,attr_policy,attr_n1,attr_full,atm,ptdd,attr_ci95,atm_ci95\n";
    for (const auto& c : r.cells) {
        const auto& a = c.metrics;
        cell_columns(os, r.grid, c.cell);
        os << ',' << a.runs << ',' << fmt4(a.attr_policy) << ',' << fmt4(a.attr_n1) << ',' << fmt4(a.attr_full) << ','
           << fmt4(a.atm) << ',' << fmt4(a.ptdd) << ',' << fmt4(a.attr_ci95) << ',' << fmt4(a.atm_ci95) << '\n';
    }
    return os.str();
}

namespace {

double node_mean(const std::vector<double>& v)
{
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? kNoMark : s / static_cast<double>(v.size());
}

} // namespace

std::string per_run_csv(const GridResult& r)
{
    std::ostringstream os;
    os << metadata(r);
    os << "scenario,protocol,termination,N,C,m,pr,run,seed,topo_seed,completed,ttr_policy,ttr_n1,ttr_full,ctm,dnl\n";
    for (const auto& c : r.cells)
        for (std::size_t i = 0; i < c.runs.size(); ++i) {
            const auto& run = c.runs[i];
            cell_columns(os, r.grid, c.cell);
            os << ',' << i << ',' << run.seed << ',' << run.topology_seed << ',' << (run.completed ? 1 : 0) << ','
               << fmt4(node_mean(run.t_term)) << ',' << fmt4(node_mean(run.t_n1)) << ','
               << fmt4(node_mean(run.t_full)) << ',' << fmt4(run.ctm) << ',';
            for (std::size_t n = 0; n < run.dnl_at_term.size(); ++n) {
                if (n) os << ';';
                const auto& d = run.dnl_at_term[n];
                for (std::size_t k = 0; k < d.size(); ++k) os << (k ? "|" : "") << d[k];
            }
            os << '\n';
        }
    return os.str();
}

namespace {

std::vector<std::string_view> split_on(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto p = s.find(sep, start);
        out.push_back(s.substr(start, p == std::string_view::npos ? std::string_view::npos : p - start));
        if (p == std::string_view::npos) return out;
        start = p + 1;
    }
}

// `key=value` tokens of a metadata line.
std::map<std::string, std::string, std::less<>> meta_tokens(std::string_view line)
{
    std::map<std::string, std::string, std::less<>> out;
    for (auto tok : split_on(line, ' ')) {
        const auto eq = tok.find('=');
        if (eq != std::string_view::npos) out.emplace(std::string(tok.substr(0, eq)), std::string(tok.substr(eq + 1)));
    }
    return out;
}

} // namespace

AuditReport audit_per_run_csv(std::istream& is)
{
    AuditReport rep;
    std::optional<Area> area;
    std::optional<double> range;
    bool header = false;
    std::string line;
    std::size_t lineno = 0;
    auto problem = [&](const std::string& msg) {
        ++rep.mismatches;
        if (rep.problems.size() < 20) rep.problems.push_back("line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line[0] == '#') {
            auto tok = meta_tokens(line);
            if (auto it = tok.find("area"); it != tok.end()) area = parse_area(it->second);
            if (auto it = tok.find("range"); it != tok.end()) range = parse_number<double>("range", it->second);
            continue;
        }
        if (!header) {
            if (line.rfind("scenario,protocol,termination,N,C,m,pr,run,seed,topo_seed,", 0) != 0)
                throw Error(ErrorKind::Io, "audit: not a per-run CSV (unexpected header)");
            if (!area || !range) throw Error(ErrorKind::Io, "audit: metadata lacks area/range");
            header = true;
            continue;
        }
        const auto f = split_on(line, ',');
        if (f.size() != 16) throw Error(ErrorKind::Io, "audit: line " + std::to_string(lineno) + " has wrong field count");
        ++rep.rows;
        const auto n = parse_number<std::size_t>("N", f[3]);
        const auto topo_seed = parse_number<std::uint64_t>("topo_seed", f[9]);
        if (f[10] != "1") continue;   // incomplete runs carry no frozen lists
        const auto topo = deploy(n, *area, *range, topo_seed);
        const auto lists = split_on(f[15], ';');
        if (lists.size() != n) {
            problem("dnl field has " + std::to_string(lists.size()) + " nodes, expected " + std::to_string(n));
            continue;
        }
        std::vector<double> ptms;
        for (NodeId i = 0; i < n; ++i) {
            std::vector<NodeId> dnl;
            if (!lists[i].empty())
                for (auto id : split_on(lists[i], '|')) dnl.push_back(parse_number<std::size_t>("dnl", id));
            for (NodeId u : dnl)
                if (u >= n || !topo.linked(i, u))
                    problem("node " + std::to_string(i) + " lists " + std::to_string(u) + " which is not a neighbour");
            ptms.push_back(ptm(dnl, topo.direct(i)));
        }
        const std::string recomputed = fmt4(ctm(ptms));
        if (recomputed != f[14])
            problem("ctm " + std::string(f[14]) + " but ground truth gives " + recomputed);
        if (f[1] == "mrdmca" && f[2] == "controlled" && recomputed != "100.0000")
            problem("controlled mrdmca run below 100% topology match");
    }
    if (!header) throw Error(ErrorKind::Io, "audit: no CSV header found");
    return rep;
}

} // namespace mrdmca
