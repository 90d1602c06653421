#ifndef ZETALAB_PARALLEL_HPP
#define ZETALAB_PARALLEL_HPP

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace zetalab {

/// Runs fn(block) for block = 0..n_blocks-1 on `workers` threads.
///
/// Blocks are claimed from a shared counter, so the assignment of blocks to
/// threads is nondeterministic -- callers must make each block's work
/// self-contained and write results into per-block slots, never into
/// shared accumulators.  The first exception thrown by any block is
/// rethrown on the calling thread after all threads join.
inline void parallel_blocks(std::int64_t n_blocks, int workers,
                            const std::function<void(std::int64_t)>& fn) {
    if (n_blocks <= 0) return;
    if (workers < 1) workers = 1;
    if (workers == 1 || n_blocks == 1) {
        for (std::int64_t b = 0; b < n_blocks; ++b) fn(b);
        return;
    }

    std::atomic<std::int64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto drain = [&] {
        for (;;) {
            std::int64_t b = next.fetch_add(1, std::memory_order_relaxed);
            if (b >= n_blocks) return;
            try {
                fn(b);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(n_blocks, std::memory_order_relaxed);
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers) - 1);
    for (int i = 1; i < workers; ++i) pool.emplace_back(drain);
    drain();
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace zetalab

#endif
