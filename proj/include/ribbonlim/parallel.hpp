#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ribbonlim {

// Worker cap: RIBBONLIM_THREADS when set (floored at 1), otherwise the
// hardware concurrency.
inline int max_threads() {
    if (const char* env = std::getenv("RIBBONLIM_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Index-parallel map with a deterministic work layout: indices are handed
// out in fixed chunks of 64 regardless of worker count, and the callable
// must write only to slots owned by its index. Outputs are then identical
// across thread counts, which the seeded validation reports rely on.
// The first exception thrown by any index is rethrown on the caller.
template <class Fn>
void parallel_for(int n, Fn&& fn) {
    if (n <= 0) return;
    constexpr int chunk = 64;
    const int workers = std::min(max_threads(), (n + chunk - 1) / chunk);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }

    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_lock;

    auto run = [&] {
        for (;;) {
            const int begin = next.fetch_add(chunk);
            if (begin >= n || failed.load(std::memory_order_relaxed)) return;
            const int end = std::min(n, begin + chunk);
            for (int i = begin; i < end; ++i) {
                try {
                    fn(i);
                } catch (...) {
                    {
                        const std::lock_guard<std::mutex> guard(error_lock);
                        if (!error) error = std::current_exception();
                    }
                    failed.store(true, std::memory_order_relaxed);
                    return;
                }
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers - 1));
    for (int w = 1; w < workers; ++w) pool.emplace_back(run);
    run();
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace ribbonlim
