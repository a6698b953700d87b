#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace maxmart {

/// Worker count: `requested` if nonzero, else $MAXMART_JOBS, else hardware concurrency.
unsigned resolve_jobs(unsigned requested = 0);

/// Runs body(i) for i in [0, n) on up to `jobs` threads. Work is handed out
/// in fixed chunks; the body must only write to slot i of any shared output.
template <class Body>
void parallel_for(std::size_t n, unsigned jobs, Body&& body) {
    jobs = std::max(1u, resolve_jobs(jobs));
    constexpr std::size_t kChunk = 16;
    if (jobs == 1 || n <= kChunk) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        try {
            for (;;) {
                const std::size_t begin = next.fetch_add(kChunk);
                if (begin >= n) return;
                const std::size_t end = std::min(n, begin + kChunk);
                for (std::size_t i = begin; i < end; ++i) body(i);
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next.store(n);
        }
    };
    {
        std::vector<std::jthread> pool;
        const auto count = static_cast<std::size_t>(jobs);
        pool.reserve(count);
        for (std::size_t w = 0; w < count; ++w) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
}

/// Index-ordered map: result[i] = f(i). Output order never depends on `jobs`.
template <class R, class F>
std::vector<R> parallel_map(std::size_t n, unsigned jobs, F&& f) {
    std::vector<R> out(n);
    parallel_for(n, jobs, [&](std::size_t i) { out[i] = f(i); });
    return out;
}

}  // namespace maxmart
