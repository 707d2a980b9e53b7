#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace frobstat {

// Default worker count: FROBSTAT_WORKERS env var, else hardware concurrency.
inline int default_workers() {
    if (const char* env = std::getenv("FROBSTAT_WORKERS")) {
        int w = std::atoi(env);
        if (w >= 1) return w;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

// Runs fn(begin, end) over [0, n) split into fixed-size chunks that workers
// claim atomically.  Chunk boundaries depend only on chunk_size, so any
// per-index output written by fn is identical for every worker count.
// The first exception thrown by any chunk is rethrown to the caller.
inline void parallel_for_chunks(std::int64_t n, int workers, std::int64_t chunk_size,
                                const std::function<void(std::int64_t, std::int64_t)>& fn) {
    if (n <= 0) return;
    if (workers < 1) workers = 1;
    if (chunk_size < 1) chunk_size = 1;
    std::int64_t n_chunks = (n + chunk_size - 1) / chunk_size;
    if (workers == 1 || n_chunks == 1) {
        for (std::int64_t c = 0; c < n_chunks; ++c)
            fn(c * chunk_size, std::min(n, (c + 1) * chunk_size));
        return;
    }

    std::atomic<std::int64_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        while (true) {
            std::int64_t c = next.fetch_add(1);
            if (c >= n_chunks) return;
            try {
                fn(c * chunk_size, std::min(n, (c + 1) * chunk_size));
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> threads;
    int nt = static_cast<int>(std::min<std::int64_t>(workers, n_chunks));
    threads.reserve(nt);
    for (int i = 0; i < nt; ++i) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace frobstat
