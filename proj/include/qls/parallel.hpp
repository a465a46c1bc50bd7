#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace qls {

// Worker-count bound: QLS_THREADS if set, else hardware concurrency, min 1.
inline int thread_budget() {
    static const int budget = [] {
        if (const char* env = std::getenv("QLS_THREADS")) {
            const long v = std::strtol(env, nullptr, 10);
            if (v >= 1) return static_cast<int>(v);
        }
        const unsigned hw = std::thread::hardware_concurrency();
        return hw ? static_cast<int>(hw) : 1;
    }();
    return budget;
}

// Runs fn(chunk) for chunk in [0, n_chunks). Workers pull chunks from a
// shared counter; the chunk decomposition is fixed by the caller, so results
// merged per-chunk do not depend on the worker count.
inline void parallel_chunks(int n_chunks, int threads, const std::function<void(int)>& fn) {
    if (threads <= 0) threads = thread_budget();
    if (threads > n_chunks) threads = n_chunks;
    if (threads <= 1) {
        for (int c = 0; c < n_chunks; ++c) fn(c);
        return;
    }
    std::atomic<int> next{0};
    auto worker = [&] {
        for (;;) {
            const int c = next.fetch_add(1);
            if (c >= n_chunks) break;
            fn(c);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads) - 1);
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
}

}  // namespace qls
