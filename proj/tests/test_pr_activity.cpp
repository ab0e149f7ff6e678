// Copyright 2026 The mrdmca-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include "error.hpp"
#include "pr_activity.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace mrdmca;

TEST_CASE("pr level parsing")
{
    CHECK_FALSE(parse_pr_level("off").enabled);
    const auto h = parse_pr_level("high");
    CHECK(h.enabled);
    CHECK(h.utilization() == doctest::Approx(0.85));
    CHECK(h.mean_on() == doctest::Approx(8.5));
    CHECK(h.mean_off() == doctest::Approx(1.5));
    const auto r = parse_pr_level("0.5:0.25");
    CHECK(r.utilization() == doctest::Approx(1.0 / 3.0));
    CHECK_EQ(pr_level_name(r), "0.5:0.25");
    CHECK_EQ(pr_level_name(h), "high");
    CHECK_THROWS_AS(parse_pr_level("medium"), Error);
    CHECK_THROWS_AS(parse_pr_level("0:1"), Error);
}

TEST_CASE("disabled process is never busy")
{
    ChannelOccupancy occ(PrParams::off(), 4, 1);
    for (std::int64_t h = 0; h < 1000; ++h) CHECK_FALSE(occ.is_busy({1 + static_cast<int>(h % 4)}, h));
    CHECK_THROWS_AS(occ.force_state({1}, true, 3.0), std::logic_error);
}

TEST_CASE("busy fraction follows utilisation")
{
    ChannelOccupancy occ(PrParams::rates(0.5, 0.5), 1, 7);
    int busy = 0;
    const int n = 40000;
    for (int h = 0; h < n; ++h) busy += occ.is_busy({1}, h);
    CHECK(busy / double(n) == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("queries must move forward in time")
{
    ChannelOccupancy occ(PrParams::high(), 2, 1);
    occ.is_busy({1}, 10);
    CHECK_THROWS_AS(occ.is_busy({1}, 9), std::logic_error);
    CHECK_NOTHROW(occ.is_busy({2}, 3));
    CHECK_THROWS_AS(occ.is_busy({3}, 20), Error);
}

TEST_CASE("channel trajectory does not depend on other channels' queries")
{
    ChannelOccupancy a(PrParams::high(), 3, 5);
    ChannelOccupancy b(PrParams::high(), 3, 5);
    for (std::int64_t h = 0; h < 500; ++h) {
        if (h % 3 == 0) b.is_busy({1}, h);
        b.is_busy({3}, h);
        CHECK_EQ(a.is_busy({2}, h), b.is_busy({2}, h));
    }
}

TEST_CASE("forced state holds until the given transition")
{
    ChannelOccupancy occ(PrParams::high(), 1, 2);
    occ.is_busy({1}, 0);
    occ.force_state({1}, true, 5.0);
    for (std::int64_t h = 0; h < 10; ++h) CHECK(occ.is_busy({1}, h));
    CHECK_FALSE(occ.is_busy({1}, 10));
}
