// Copyright 2026 The mrdmca-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include "error.hpp"
#include "protocol.hpp"

#include <doctest.h>

using namespace mrdmca;

namespace {

// 0 at origin; 1 in range of 0; 2 in range of 1 only; 3 in range of 0 and 2.
const std::vector<Coordinates> kPos{{0, 0}, {80, 0}, {160, 0}, {50, 60}};

NeighbourTables table(NodeId i, Validation v)
{
    return NeighbourTables(i, kPos[i], kPos.size(), 100.0, v);
}

} // namespace

TEST_CASE("direct neighbour is final")
{
    auto t = table(0, Validation::None);
    t.add_direct(1, kPos[1]);
    CHECK(t.role(1) == Role::Direct);
    t.classify_learned(1, kPos[1]);
    CHECK(t.role(1) == Role::Direct);
    CHECK_EQ(t.dnl_size(), 1);
    t.add_direct(0, kPos[0]);
    CHECK(t.role(0) == Role::Unknown);
    CHECK_EQ(t.known(), 1);
}

TEST_CASE("without validation learned nodes are indirect")
{
    auto t = table(0, Validation::None);
    t.classify_learned(3, kPos[3]);
    t.classify_learned(2, kPos[2]);
    CHECK(t.role(3) == Role::Indirect);
    CHECK(t.role(2) == Role::Indirect);
    CHECK_EQ(t.pending_in_range(), std::vector<NodeId>{3});
    t.add_direct(3, kPos[3]);
    CHECK(t.role(3) == Role::Direct);
    CHECK_EQ(t.inl(), std::vector<NodeId>{2});
}

TEST_CASE("coordinate validation routes in-range nodes to IDN")
{
    auto t = table(0, Validation::Coordinate);
    t.classify_learned(3, kPos[3]);
    t.classify_learned(2, kPos[2]);
    CHECK(t.role(3) == Role::Intended);
    CHECK(t.role(2) == Role::Indirect);
    CHECK_EQ(t.idn(), std::vector<NodeId>{3});
    CHECK_EQ(t.known(), 1);
    t.add_direct(3, kPos[3]);
    CHECK_EQ(t.idn_size(), 0);
    CHECK_EQ(t.dnl(), std::vector<NodeId>{3});
}

TEST_CASE("mutual handshake merges both ways")
{
    auto a = table(0, Validation::Coordinate);
    auto b = table(1, Validation::Coordinate);
    b.add_direct(2, kPos[2]);
    a.add_direct(3, kPos[3]);
    process_handshake(a, b, Exchange::Mutual);
    CHECK(a.role(1) == Role::Direct);
    CHECK(b.role(0) == Role::Direct);
    CHECK(a.role(2) == Role::Indirect);   // 160 m away
    CHECK(b.role(3) == Role::Intended);   // 67 m away
}

TEST_CASE("beacon handshake only informs the responder")
{
    auto a = table(0, Validation::None);
    auto b = table(1, Validation::None);
    b.add_direct(2, kPos[2]);
    a.add_direct(3, kPos[3]);
    process_handshake(a, b, Exchange::Beacon);
    CHECK(a.role(1) == Role::Direct);
    CHECK(a.role(2) == Role::Unknown);
    CHECK(b.role(3) == Role::Indirect);
}

TEST_CASE("snapshot lists every known node")
{
    auto t = table(1, Validation::Coordinate);
    t.add_direct(0, kPos[0]);
    t.classify_learned(2, kPos[2]);
    const auto s = snapshot(t);
    REQUIRE_EQ(s.size(), 2);
    CHECK_EQ(s[0].id, 0);
    CHECK(s[0].role == Role::Direct);
    CHECK(s[1].role == Role::Intended);
    CHECK_FALSE(t.coordinates(3).has_value());
    const auto m = make_message(HandshakeMessage::Kind::Ack, t, false);
    CHECK(m.tables.empty());
    CHECK_EQ(m.sender, 1);
}

TEST_CASE("termination predicates")
{
    auto t = table(0, Validation::Coordinate);
    t.add_direct(1, kPos[1]);
    t.classify_learned(2, kPos[2]);
    t.classify_learned(3, kPos[3]);
    CHECK_FALSE(check_termination(t, Termination::Baseline, 4));
    t.add_direct(3, kPos[3]);
    CHECK(check_termination(t, Termination::Baseline, 4));
    CHECK(check_termination(t, Termination::Controlled, 4));
    CHECK_FALSE(check_termination(t, Termination::RunToFull, 4));

    auto u = table(0, Validation::Coordinate);
    u.add_direct(1, kPos[1]);
    u.classify_learned(2, kPos[2]);
    u.classify_learned(3, kPos[3]);
    u.add_direct(2, kPos[2]);   // engine never does this out of range; predicate only counts
    CHECK_FALSE(check_termination(u, Termination::Controlled, 4));
}

TEST_CASE("protocol traits")
{
    CHECK(traits(Protocol::Rcs).exchange == Exchange::Beacon);
    CHECK(traits(Protocol::Mca).exchange == Exchange::Beacon);
    CHECK(traits(Protocol::Emca).exchange == Exchange::Mutual);
    CHECK(traits(Protocol::Mrdmca).validates_coordinates);
    CHECK(validation_for(Protocol::Mdmca, Termination::Baseline) == Validation::None);
    CHECK(validation_for(Protocol::Rcs, Termination::Controlled) == Validation::Coordinate);
    CHECK(validation_for(Protocol::Mrdmca, Termination::Baseline) == Validation::Coordinate);
    CHECK(parse_termination("full") == Termination::RunToFull);
    CHECK_THROWS_AS(parse_termination("n-1"), Error);
}
