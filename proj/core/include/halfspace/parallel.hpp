#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace halfspace {

// Evaluates fn(0..n-1) on up to `threads` workers and returns the results in
// index order. If any call throws, the exception from the lowest index is
// rethrown after all workers finish, so failures are reported deterministically.
template <class T, class F>
std::vector<T> parallel_map(std::size_t n, int threads, F fn) {
    std::vector<T> out(n);
    std::vector<std::exception_ptr> errs(n);
    const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, threads)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::atomic<std::size_t> next{0};
    auto run = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                out[i] = fn(i);
            } catch (...) {
                errs[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run);
    for (std::thread& t : pool) t.join();
    for (const std::exception_ptr& e : errs) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

}  // namespace halfspace
