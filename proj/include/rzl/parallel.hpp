#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace rzl {

// Run blocks 0..nblocks-1 across `threads` workers.  Each block must write
// only its own output slots; with that discipline results are bit-identical
// for any thread count, because block boundaries (not thread scheduling)
// decide where every accumulator restarts.
inline void parallel_blocks(long nblocks, int threads, const std::function<void(long)>& body) {
    if (nblocks <= 0)
        return;
    if (threads <= 0) {
        unsigned hc = std::thread::hardware_concurrency();
        threads = hc ? (int)hc : 1;
    }
    if (threads > nblocks)
        threads = (int)nblocks;
    if (threads == 1) {
        for (long b = 0; b < nblocks; ++b)
            body(b);
        return;
    }
    std::atomic<long> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr err;
    std::mutex err_mutex;
    auto worker = [&]() {
        for (;;) {
            long b = next.fetch_add(1);
            if (b >= nblocks || failed.load())
                return;
            try {
                body(b);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mutex);
                if (!err)
                    err = std::current_exception();
                failed.store(true);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve((size_t)threads);
    for (int t = 0; t < threads; ++t)
        pool.emplace_back(worker);
    for (auto& th : pool)
        th.join();
    if (err)
        std::rethrow_exception(err);
}

} // namespace rzl
