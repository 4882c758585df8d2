#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace chaoslab {

// Global worker count, set once by the CLI (--threads / CHAOSLAB_THREADS).
// Results never depend on it: every parallel_for writes into per-index slots
// and reductions run sequentially over those slots afterwards.
inline unsigned& worker_count() {
    static unsigned n = std::max(1u, std::thread::hardware_concurrency());
    return n;
}

template <class F>
void parallel_for(std::size_t count, F&& body) {
    unsigned nw = static_cast<unsigned>(std::min<std::size_t>(worker_count(), count));
    if (nw <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr err;
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (unsigned w = 0; w < nw; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= count || failed.load()) return;
                try {
                    body(i);
                } catch (...) {
                    if (!failed.exchange(true)) err = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

} // namespace chaoslab
