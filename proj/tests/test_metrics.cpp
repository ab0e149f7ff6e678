// Copyright 2026 The mrdmca-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include "error.hpp"
#include "metrics.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace mrdmca;

namespace {

RunRecord record(std::vector<double> n1, std::vector<double> full, std::vector<double> term, double ctm_value,
                 std::string cell = "c")
{
    RunRecord r;
    r.cell = std::move(cell);
    r.completed = true;
    r.t_n1 = std::move(n1);
    r.t_full = std::move(full);
    r.t_term = std::move(term);
    r.ctm = ctm_value;
    return r;
}

} // namespace

TEST_CASE("ptm and ctm")
{
    const std::vector<NodeId> ground{1, 2, 4};
    CHECK(ptm(std::vector<NodeId>{1, 2, 4}, ground) == 100.0);
    CHECK(ptm(std::vector<NodeId>{1}, ground) == doctest::Approx(100.0 / 3.0));
    CHECK(ptm(std::vector<NodeId>{}, std::vector<NodeId>{}) == 100.0);
    CHECK(ctm(std::vector<double>{100.0, 50.0}) == 75.0);
    CHECK_THROWS_AS(ctm(std::vector<double>{}), Error);
}

TEST_CASE("ptm and ctm agree with the oracle on hand-built 5-node instances")
{
    // edges: 0-1, 0-2, 1-2, 1-4, 2-3
    const std::vector<oracle::Point> pts{{0, 0}, {60, 0}, {0, 70}, {0, 160}, {130, 30}};
    const std::vector<Coordinates> pos{{0, 0}, {60, 0}, {0, 70}, {0, 160}, {130, 30}};
    GroundTopology topo(pos, 100.0);
    const std::vector<std::vector<std::vector<NodeId>>> cases{
        {{1, 2}, {0}, {0, 3}, {2}, {1}},
        {{1}, {}, {3}, {}, {}},
        {{1, 2}, {0, 4}, {0, 3}, {2}, {1}},
    };
    for (const auto& dnls : cases) {
        std::vector<double> ptms;
        for (NodeId i = 0; i < 5; ++i) {
            const double p = ptm(dnls[i], topo.direct(i));
            CHECK(p == oracle::ptm(i, dnls[i], pts, 100.0));
            ptms.push_back(p);
        }
        CHECK(ctm(ptms) == oracle::ctm(dnls, pts, 100.0));
    }
    // second case: PTMs {50, 0, 100/3, 0, 0}
    CHECK(oracle::ctm(cases[1], pts, 100.0) == doctest::Approx(50.0 / 3.0));
}

TEST_CASE("attr uses the mean of per-run node means")
{
    const std::vector<RunRecord> one{record({2.0, 4.0}, {2.0, 4.0}, {2.0, 4.0}, 100)};
    CHECK(attr(one, TimeMark::Policy) == 3.0);
    const std::vector<RunRecord> two{record({3.0}, {3.0}, {3.0}, 100), record({4.0, 6.0}, {4.0, 6.0}, {4.0, 6.0}, 100)};
    CHECK(attr(two, TimeMark::N1) == 4.0);
}

TEST_CASE("ptdd is full minus n1")
{
    const std::vector<RunRecord> runs{record({1.0, 3.0}, {2.0, 6.0}, {1.0, 3.0}, 80),
                                      record({2.0, 2.0}, {2.0, 4.0}, {2.0, 2.0}, 90)};
    CHECK(ptdd(runs) == doctest::Approx(1.5));
    CHECK(ptdd(runs, TimeMark::Policy) == doctest::Approx(1.5));
    CHECK(ptdd(runs, TimeMark::Full) == 0.0);
}

TEST_CASE("aggregation refuses bad input")
{
    const std::vector<RunRecord> mixed{record({1}, {1}, {1}, 100, "a"), record({1}, {1}, {1}, 100, "b")};
    CHECK_THROWS_AS(attr(mixed, TimeMark::N1), Error);
    CHECK_THROWS_AS(aggregate(mixed), Error);
    auto missing = record({1.0}, {kNoMark}, {1.0}, 100);
    CHECK_THROWS_AS(ptdd(std::vector<RunRecord>{missing}), Error);
    auto incomplete = record({1.0}, {1.0}, {1.0}, 100);
    incomplete.completed = false;
    CHECK_THROWS_AS(attr(std::vector<RunRecord>{incomplete}, TimeMark::N1), Error);
    CHECK_THROWS_AS(attr(std::vector<RunRecord>{}, TimeMark::N1), Error);
}

TEST_CASE("aggregate means and intervals")
{
    std::vector<RunRecord> runs{record({1.0}, {2.0}, {3.0}, 90), record({3.0}, {6.0}, {5.0}, 100)};
    auto bad = record({0.0}, {0.0}, {0.0}, 0);
    bad.completed = false;
    runs.push_back(bad);
    const auto a = aggregate(runs);
    CHECK_EQ(a.runs, 2);
    CHECK_EQ(a.incomplete, 1);
    CHECK(a.attr_policy == 4.0);
    CHECK(a.attr_n1 == 2.0);
    CHECK(a.attr_full == 4.0);
    CHECK(a.ptdd == 2.0);
    CHECK(a.atm == 95.0);
    // sd of {3, 5} is sqrt(2); 1.96 * sqrt(2) / sqrt(2)
    CHECK(a.attr_ci95 == doctest::Approx(1.96));
    CHECK(a.atm_ci95 == doctest::Approx(1.96 * 5.0));
    CHECK(a.ptdd_ci95 == doctest::Approx(1.96));
    // full {2, 6} against policy {3, 5}
    CHECK(aggregate(runs, TimeMark::Policy).ptdd == 0.0);

    std::vector<RunRecord> none{bad};
    const auto n = aggregate(none);
    CHECK_EQ(n.runs, 0);
    CHECK(std::isnan(n.atm));
}
