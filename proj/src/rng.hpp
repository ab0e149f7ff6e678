// Copyright 2026 The mrdmca-sim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace mrdmca {

using Rng = std::mt19937_64;

/// splitmix64 finaliser; good avalanche for adjacent integers.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Derives an independent stream seed from a parent seed and a path of
/// integers, e.g. derive_seed(master, {cell, run}).
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::initializer_list<std::uint64_t> path) noexcept
{
    std::uint64_t h = mix64(parent);
    for (auto v : path) h = mix64(h ^ mix64(v + 0x632BE59BD9B4E019ULL));
    return h;
}

// Stream tags used below a run seed.
enum class Stream : std::uint64_t {
    Topology = 1,
    Channels = 2,
    PrActivity = 3,
    Hopping = 4,
    Handshake = 5,
};

constexpr std::uint64_t derive_seed(std::uint64_t parent, Stream s, std::uint64_t index = 0) noexcept
{
    return derive_seed(parent, {static_cast<std::uint64_t>(s), index});
}

} // namespace mrdmca
