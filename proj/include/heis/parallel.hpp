#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace heis {

/// Worker count: HEIS_SPECTRA_THREADS if set to a positive integer, else the
/// hardware concurrency, never more than the number of tasks.
inline unsigned worker_count(std::size_t tasks) {
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    if (const char *env = std::getenv("HEIS_SPECTRA_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) workers = static_cast<unsigned>(v);
        } catch (const std::exception &) {
        }
    }
    return static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(tasks, 1)));
}

/// out[i] = f(i) for i < count. Each slot is written by exactly one worker,
/// so the result does not depend on the worker count. The first exception
/// thrown by any task is rethrown.
template <typename T, typename F>
std::vector<T> parallel_map(std::size_t count, F &&f, unsigned workers = 0) {
    std::vector<T> out(count);
    if (workers == 0) workers = worker_count(count);
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) out[i] = f(i);
        return out;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) {
                try {
                    out[i] = f(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto &t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return out;
}

} // namespace heis
