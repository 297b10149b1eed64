#ifndef PAIGE_PARALLEL_HPP
#define PAIGE_PARALLEL_HPP

#include <atomic>
#include <cstdint>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace paige {

inline unsigned default_thread_count() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

/// Runs fn(chunk_index, begin, end) over [begin, end) split into fixed-size
/// chunks handed out dynamically. Chunk boundaries depend only on the range
/// and chunk size, never on the thread count, so per-chunk accumulators and
/// per-chunk RNG streams are reproducible on any machine.
inline void parallel_chunks(std::uint64_t begin, std::uint64_t end,
                            std::uint64_t chunk_size,
                            const std::function<void(std::uint64_t, std::uint64_t, std::uint64_t)>& fn,
                            unsigned threads = 0) {
    if (end <= begin) return;
    if (chunk_size == 0) chunk_size = 1;
    const std::uint64_t total = end - begin;
    const std::uint64_t nchunks = (total + chunk_size - 1) / chunk_size;
    if (threads == 0) threads = default_thread_count();
    if (threads > nchunks) threads = static_cast<unsigned>(nchunks);

    if (threads <= 1) {
        for (std::uint64_t c = 0; c < nchunks; ++c) {
            const std::uint64_t b = begin + c * chunk_size;
            const std::uint64_t e = std::min(end, b + chunk_size);
            fn(c, b, e);
        }
        return;
    }

    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    std::exception_ptr first_error;
    std::atomic<bool> failed{false};
    std::mutex err_mutex;
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::uint64_t c = next.fetch_add(1);
                if (c >= nchunks || failed.load(std::memory_order_relaxed)) break;
                const std::uint64_t b = begin + c * chunk_size;
                const std::uint64_t e = std::min(end, b + chunk_size);
                try {
                    fn(c, b, e);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!failed.exchange(true)) first_error = std::current_exception();
                    break;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failed) std::rethrow_exception(first_error);
}

/// splitmix64; used to derive independent per-chunk RNG seeds from one
/// user-visible seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace paige

#endif
