#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace imbandit {

/// Sequential random stream used by all stateful sampling (explore draws,
/// credit assignment, RR roots).
using Rng = std::mt19937_64;

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Derives a child seed from a parent seed and a path of tags. Streams
/// derived from distinct tag paths are statistically independent, and the
/// derivation does not depend on call order, so parallel and serial
/// schedules see identical streams.
constexpr std::uint64_t derive_seed(std::uint64_t parent,
                                    std::initializer_list<std::uint64_t> tags) noexcept {
    std::uint64_t s = mix64(parent);
    for (auto t : tags) s = mix64(s ^ mix64(t + 0x632be59bd9b4e019ULL));
    return s;
}

/// Maps a 64-bit word to a double in [0, 1) using the top 53 bits.
constexpr double to_unit(std::uint64_t x) noexcept {
    return static_cast<double>(x >> 11) * 0x1.0p-53;
}

/// Counter-based uniform for edge `edge` in the world identified by
/// `world_seed`. Lets a world be evaluated lazily, edge by edge, without
/// materializing it, while staying identical to the materialized form.
constexpr double edge_uniform(std::uint64_t world_seed, std::uint64_t edge) noexcept {
    return to_unit(mix64(world_seed ^ mix64(edge ^ 0xd1b54a32d192ed03ULL)));
}

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

/// Named stream tags for the game loop.
enum class Stream : std::uint64_t {
    world = 1,
    explore = 2,
    coin = 3,
    oracle = 4,
    credit = 5,
    benchmark = 6,
    strategic = 7,
};

constexpr std::uint64_t tag(Stream s) noexcept { return static_cast<std::uint64_t>(s); }

}  // namespace imbandit
