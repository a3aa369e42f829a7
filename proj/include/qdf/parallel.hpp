#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace qdf {

// Worker count from QDF_THREADS, else the hardware count.
inline unsigned worker_count()
{
    if (const char* env = std::getenv("QDF_THREADS")) {
        try {
            long v = std::stol(env);
            if (v >= 1)
                return static_cast<unsigned>(v);
        } catch (...) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

// Runs body(i) for i in [0, n). Results must be written to per-index slots.
template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& body)
{
    threads = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next++) < n;) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(err_mu);
                    if (!err)
                        err = std::current_exception();
                }
            }
        });
    for (auto& th : pool)
        th.join();
    if (err)
        std::rethrow_exception(err);
}

} // namespace qdf
