#pragma once

#include <algorithm>
#include <functional>
#include <thread>
#include <vector>

namespace ionspec {

// Runs fn(i) for i in [0, n). Work is split into contiguous index blocks, one
// per worker; results must be written to per-index slots so the merge is
// deterministic regardless of the worker count.
inline void parallel_for(int n, int n_threads, const std::function<void(int)>& fn) {
    n_threads = std::max(1, std::min(n_threads, n));
    if (n_threads == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(n_threads));
    const int block = (n + n_threads - 1) / n_threads;
    for (int w = 0; w < n_threads; ++w) {
        const int lo = w * block;
        const int hi = std::min(n, lo + block);
        if (lo >= hi) break;
        workers.emplace_back([lo, hi, &fn] {
            for (int i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : workers) t.join();
}

}  // namespace ionspec
