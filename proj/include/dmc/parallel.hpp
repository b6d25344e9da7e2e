#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace dmc {

/// Runs body(i) for i in [0, count) on a few worker threads.  Each index is
/// written by exactly one worker, so results do not depend on scheduling.
/// Small ranges run inline.
template <class Body>
void parallel_for(std::size_t count, Body&& body, std::size_t min_parallel = 256)
{
    const std::size_t hw = std::max<unsigned>(1u, std::thread::hardware_concurrency());
    const std::size_t workers = std::min<std::size_t>(hw, 8);
    if (count < min_parallel || workers == 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    const std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            try {
                for (std::size_t i = lo; i < hi; ++i) body(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace dmc
