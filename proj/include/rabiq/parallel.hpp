// rabiq/parallel.hpp - deterministic grid parallelism capped by RABIQ_THREADS
#pragma once

#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace rabiq {

// Number of worker threads: RABIQ_THREADS if set (integer >= 1), else the
// hardware concurrency. Re-read on every call so tests can toggle the
// environment in-process.
inline int thread_count() {
    if (const char* env = std::getenv("RABIQ_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 1)
            throw std::invalid_argument("RABIQ_THREADS must be an integer >= 1, got '" +
                                        std::string(env) + "'");
        return static_cast<int>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs body(i) for i in [0, n). Work is split by index stride, so each item
// is computed by exactly one thread with thread-independent arithmetic;
// callers that write results[i] get output identical to the serial order.
template <class F>
void parallel_for(int n, F&& body) {
    if (n <= 0) return;
    const int threads = std::min(thread_count(), n);
    if (threads <= 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (int i = t; i < n; i += threads) body(i);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace rabiq
