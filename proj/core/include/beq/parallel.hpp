#ifndef BEQ_PARALLEL_HPP
#define BEQ_PARALLEL_HPP

#include <cstdint>
#include <thread>
#include <vector>

namespace beq::parallel {

inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? int(hw) : 1;
}

/// Runs f(i) for i in [begin, end) split into contiguous blocks, one per
/// worker.  Each index is processed exactly once with no shared state,
/// so results are identical for any thread count.
template <typename F>
void for_each_index(std::int64_t begin, std::int64_t end, int threads, F&& f) {
    const std::int64_t count = end - begin;
    if (count <= 0) return;
    threads = resolve_threads(threads);
    if (threads <= 1 || count == 1) {
        for (std::int64_t i = begin; i < end; ++i) f(i);
        return;
    }
    const std::int64_t workers = std::min<std::int64_t>(threads, count);
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(workers));
    for (std::int64_t w = 0; w < workers; ++w) {
        const std::int64_t lo = begin + count * w / workers;
        const std::int64_t hi = begin + count * (w + 1) / workers;
        pool.emplace_back([lo, hi, &f] {
            for (std::int64_t i = lo; i < hi; ++i) f(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace beq::parallel

#endif
