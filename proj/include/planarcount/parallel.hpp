#pragma once

// Thread budget and a chunked parallel-for. All parallel code paths in this
// library operate on exact types with disjoint output ranges, so results are
// identical for any thread count.

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace planarcount {

inline unsigned thread_budget() {
    if (const char* e = std::getenv("PLANARCOUNT_THREADS")) {
        long v = std::strtol(e, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1;
}

// fn(lo, hi) over a partition of [0, n); runs inline when one worker suffices.
template <class Fn>
void parallel_ranges(long n, Fn&& fn, unsigned threads = thread_budget()) {
    if (n <= 0) return;
    unsigned workers = static_cast<unsigned>(std::min<long>(threads, n));
    if (workers <= 1) {
        fn(0L, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    long chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        long lo = w * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
    }
    for (auto& t : pool) t.join();
}

} // namespace planarcount
