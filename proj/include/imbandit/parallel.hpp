#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace imbandit {

/// Runs fn(chunk_index, begin, end) over fixed-size chunks of [0, n).
///
/// Chunk boundaries depend only on n and chunk_size, never on `workers`, so a
/// caller that reduces per-chunk results in chunk order gets the same answer
/// for every worker count.
template <class Fn>
void for_each_chunk(std::size_t n, std::size_t chunk_size, unsigned workers, Fn&& fn) {
    chunk_size = std::max<std::size_t>(chunk_size, 1);
    const std::size_t chunks = (n + chunk_size - 1) / chunk_size;
    auto run = [&](std::size_t c) { fn(c, c * chunk_size, std::min(n, (c + 1) * chunk_size)); };
    if (workers <= 1 || chunks <= 1) {
        for (std::size_t c = 0; c < chunks; ++c) run(c);
        return;
    }
    std::vector<std::jthread> pool;
    const unsigned w = std::min<std::size_t>(workers, chunks);
    pool.reserve(w);
    for (unsigned t = 0; t < w; ++t)
        pool.emplace_back([&, t] {
            for (std::size_t c = t; c < chunks; c += w) run(c);
        });
}

inline std::size_t chunk_count(std::size_t n, std::size_t chunk_size) {
    chunk_size = std::max<std::size_t>(chunk_size, 1);
    return (n + chunk_size - 1) / chunk_size;
}

}  // namespace imbandit
