// Copyright 2026 The mrdmca-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include "error.hpp"
#include "experiments.hpp"

#include <doctest.h>

#include <sstream>

using namespace mrdmca;

namespace {

ScenarioGrid small_grid()
{
    std::istringstream in(
        "# test grid\n"
        "name = t\n"
        "protocols = rcs, mrdmca\n"
        "terminations = native\n"
        "nodes = 3,4\n"
        "channels = 6\n"
        "similarity = 2\n"
        "pr = off, high\n"
        "runs = 5\n"
        "seed = 9\n");
    return parse_grid(in);
}

} // namespace

TEST_CASE("config parsing")
{
    const auto g = small_grid();
    CHECK_EQ(g.name, "t");
    CHECK_EQ(g.protocols.size(), 2);
    CHECK_EQ(g.nodes, std::vector<std::size_t>{3, 4});
    CHECK_EQ(g.runs, 5);
    CHECK_EQ(g.seed, 9);
    CHECK(g.pr[1] == PrParams::high());

    std::istringstream area("area = 300x250\nrange = 90\nfix_topology = yes\n");
    const auto a = parse_grid(area);
    CHECK_EQ(a.area.width, 300.0);
    CHECK_EQ(a.area.height, 250.0);
    CHECK(a.fix_topology);
}

TEST_CASE("config errors name the line")
{
    auto parse = [](const char* text) {
        std::istringstream in(text);
        return parse_grid(in);
    };
    CHECK_THROWS_WITH_AS(parse("runs = 5\nbogus = 1\n"), doctest::Contains("line 2"), Error);
    CHECK_THROWS_AS(parse("protocols = rcs,,mca\n"), Error);
    CHECK_THROWS_AS(parse("runs = -1\n"), Error);
    CHECK_THROWS_AS(parse("pr = medium\n"), Error);
    CHECK_THROWS_AS(parse("channels = 4\nsimilarity = 5\n"), Error);
    CHECK_THROWS_AS(parse("nodes 3\n"), Error);
    CHECK_THROWS_AS(builtin_grid("nope"), Error);
}

TEST_CASE("native termination")
{
    CHECK(resolve_termination(TerminationChoice::Native, Protocol::Mrdmca) == Termination::Controlled);
    CHECK(resolve_termination(TerminationChoice::Native, Protocol::Mdmca) == Termination::Baseline);
    CHECK(resolve_termination(TerminationChoice::Full, Protocol::Rcs) == Termination::RunToFull);
}

TEST_CASE("built-in grids")
{
    const auto b = builtin_grid("baseline");
    CHECK_EQ(enumerate_cells(b).size(), 5 * 2 * 2 * 2);
    CHECK_EQ(b.runs, 1000);
    const auto s = builtin_grid("scale");
    CHECK_EQ(s.nodes, std::vector<std::size_t>{20});
    CHECK_EQ(s.channels, std::vector<int>{20});
}

TEST_CASE("cells enumerate protocol-major")
{
    const auto cells = enumerate_cells(small_grid());
    REQUIRE_EQ(cells.size(), 8);
    CHECK(cells[0].config.protocol == Protocol::Rcs);
    CHECK_EQ(cells[0].config.nodes, 3);
    CHECK_FALSE(cells[0].config.pr.enabled);
    CHECK(cells[1].config.pr.enabled);
    CHECK_EQ(cells[2].config.nodes, 4);
    CHECK(cells[4].config.protocol == Protocol::Mrdmca);
    CHECK(cells[4].config.termination == Termination::Controlled);
    for (std::size_t i = 0; i < cells.size(); ++i) CHECK_EQ(cells[i].index, i);
}

TEST_CASE("seeds differ per run and fixed topology is shared")
{
    auto g = small_grid();
    const auto cells = enumerate_cells(g);
    CHECK(run_seeds(g, cells[0], 0).run != run_seeds(g, cells[0], 1).run);
    CHECK(run_seeds(g, cells[0], 0).topology != run_seeds(g, cells[4], 0).topology);
    g.fix_topology = true;
    CHECK_EQ(run_seeds(g, cells[0], 3).topology, run_seeds(g, cells[4], 3).topology);
    CHECK(run_seeds(g, cells[0], 3).run != run_seeds(g, cells[4], 3).run);
}

TEST_CASE("grid output is independent of worker count")
{
    const auto g = small_grid();
    std::ostringstream t1, t3;
    const auto r1 = run_grid(g, 1, &t1);
    const auto r3 = run_grid(g, 3, &t3);
    CHECK_EQ(aggregate_csv(r1), aggregate_csv(r3));
    CHECK_EQ(per_run_csv(r1), per_run_csv(r3));
    CHECK_EQ(t1.str(), t3.str());
    CHECK(t1.str().rfind("# 0 0 ", 0) == 0);
}

TEST_CASE("aggregate csv layout")
{
    const auto r = run_grid(small_grid(), 2);
    const auto csv = aggregate_csv(r);
    CHECK(csv.find("\nscenario,protocol,termination,N,C,m,pr,runs,attr_policy,attr_n1,attr_full,atm,ptdd,attr_ci95,"
                   "atm_ci95\n") != std::string::npos);
    CHECK(csv.rfind("# mrdmca-sim ", 0) == 0);
    CHECK(csv.find("t,mrdmca,controlled,3,6,2,off,5,") != std::string::npos);
    CHECK(csv.find("t,rcs,baseline,4,6,2,high,5,") != std::string::npos);
    // every controlled mrdmca row reports atm = 100
    std::istringstream lines(csv);
    std::string line;
    int rows = 0;
    while (std::getline(lines, line))
        if (line.rfind("t,mrdmca,", 0) == 0) {
            ++rows;
            CHECK(line.find(",100.0000,0.0000,") != std::string::npos);
        }
    CHECK_EQ(rows, 4);
}

TEST_CASE("audit accepts genuine output and flags tampering")
{
    const auto r = run_grid(small_grid(), 1);
    const auto csv = per_run_csv(r);
    std::istringstream ok(csv);
    const auto rep = audit_per_run_csv(ok);
    CHECK_EQ(rep.rows, 40);
    CHECK_EQ(rep.mismatches, 0);

    // change the first data row's ctm field
    std::string bad = csv;
    const auto header = bad.find("scenario,protocol");
    const auto row = bad.find('\n', header) + 1;
    const auto end = bad.find('\n', row);
    std::string line = bad.substr(row, end - row);
    std::size_t comma = 0;
    for (int k = 0; k < 14; ++k) comma = line.find(',', comma) + 1;
    const auto next = line.find(',', comma);
    line.replace(comma, next - comma, "1.2345");
    bad.replace(row, end - row, line);
    std::istringstream tampered(bad);
    CHECK(audit_per_run_csv(tampered).mismatches >= 1);

    std::istringstream junk("hello\n");
    CHECK_THROWS_AS(audit_per_run_csv(junk), Error);
}

TEST_CASE("grid hash tracks the definition")
{
    auto g = small_grid();
    const auto h = grid_hash(g);
    CHECK_EQ(h.size(), 16);
    CHECK_EQ(grid_hash(g), h);
    g.seed = 10;
    CHECK(grid_hash(g) != h);
}
