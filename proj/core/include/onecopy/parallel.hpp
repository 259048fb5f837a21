#pragma once

#include <cstdint>
#include <thread>
#include <vector>

namespace onecopy {

inline unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

/// Static contiguous chunking of [0, total) over the workers. fn is called
/// as fn(chunk_index, begin, end); per-chunk results must be merged with an
/// order- and partition-independent reduction (sums, min-witness) so the
/// outcome does not depend on the thread count.
template <typename Fn>
void parallel_chunks(std::uint64_t total, unsigned threads, Fn&& fn) {
    unsigned workers = resolve_threads(threads);
    if (total == 0) return;
    if (workers <= 1 || total == 1) {
        fn(0u, std::uint64_t{0}, total);
        return;
    }
    if (static_cast<std::uint64_t>(workers) > total) {
        workers = static_cast<unsigned>(total);
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::uint64_t chunk = total / workers, rem = total % workers, begin = 0;
    for (unsigned w = 0; w < workers; ++w) {
        std::uint64_t end = begin + chunk + (w < rem ? 1 : 0);
        pool.emplace_back([&fn, w, begin, end] { fn(w, begin, end); });
        begin = end;
    }
    for (auto& t : pool) t.join();
}

}  // namespace onecopy
