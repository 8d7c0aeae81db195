#pragma once

// Bounded parallel map preserving input order: results land at their input
// index, so output is deterministic regardless of scheduling.

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace robin::detail {

template <typename Result>
std::vector<Result> parallel_map(std::size_t count,
                                 const std::function<Result(std::size_t)>& fn,
                                 unsigned max_threads = 0) {
    std::vector<Result> results(count);
    if (count == 0) {
        return results;
    }
    unsigned workers = max_threads ? max_threads
                                   : std::thread::hardware_concurrency();
    if (workers == 0) workers = 2;
    workers = std::min<std::size_t>(workers, count);

    std::exception_ptr first_error = nullptr;
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::mutex error_mutex;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (!failed.load(std::memory_order_relaxed)) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) {
                    break;
                }
                try {
                    results[i] = fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) {
                        first_error = std::current_exception();
                    }
                    failed.store(true);
                }
            }
        });
    }
    for (std::thread& t : pool) {
        t.join();
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }
    return results;
}

}  // namespace robin::detail
