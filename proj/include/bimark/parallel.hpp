#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace bimark {

/// Runs fn(i) for i in [0, n) across hardware threads, chunked statically so
/// results written to per-index slots are deterministic regardless of the
/// thread count. fn must not throw.
inline void parallel_for(size_t n, const std::function<void(size_t)>& fn) {
    const size_t hw = std::thread::hardware_concurrency();
    const size_t workers = std::min(n, hw == 0 ? size_t{1} : static_cast<size_t>(hw));
    if (workers <= 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (size_t i = w; i < n; i += workers) fn(i);
        });
    }
    for (std::thread& t : pool) t.join();
}

} // namespace bimark
