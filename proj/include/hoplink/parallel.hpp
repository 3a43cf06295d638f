#pragma once

#include <cstdint>
#include <thread>
#include <vector>

namespace hoplink {

/// Runs body(lo, hi) over a static partition of [0, n). With threads <= 1 the
/// body runs inline. Chunk boundaries depend only on (n, threads); callers are
/// expected to write results keyed by index so output is partition-independent.
template <class F>
void parallel_chunks(std::int64_t n, int threads, F&& body) {
    if (n <= 0) return;
    if (threads <= 1 || n == 1) {
        body(std::int64_t{0}, n);
        return;
    }
    const int workers = static_cast<int>(std::min<std::int64_t>(threads, n));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    const std::int64_t chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const std::int64_t lo = w * chunk;
        const std::int64_t hi = std::min<std::int64_t>(lo + chunk, n);
        if (lo >= hi) break;
        pool.emplace_back([&body, lo, hi] { body(lo, hi); });
    }
    for (auto& t : pool) t.join();
}

} // namespace hoplink
