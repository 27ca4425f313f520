#pragma once

#include <atomic>
#include <cstdlib>
#include <cstddef>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace hslab {

/// Thread budget: HSLAB_THREADS env wins, then the explicit request,
/// then hardware concurrency.
inline unsigned resolve_threads(unsigned requested = 0) {
    if (const char* env = std::getenv("HSLAB_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    if (requested > 0) return requested;
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? hc : 1;
}

/// Parallel map over [0, n). fn must be reentrant; results should go into
/// pre-sized storage indexed by i so output order is deterministic.
template <typename Fn>
void parallel_for(std::size_t n, const Fn& fn, unsigned threads = 0) {
    const unsigned nw = std::min<std::size_t>(resolve_threads(threads), n);
    if (nw <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::atomic<bool> failed{false};
    std::mutex err_mtx;
    pool.reserve(nw);
    for (unsigned w = 0; w < nw; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n || failed.load(std::memory_order_relaxed)) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mtx);
                    if (!failed.exchange(true)) err = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failed && err) std::rethrow_exception(err);
}

} // namespace hslab
