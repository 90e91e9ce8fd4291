#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace ksu::cli {

// KSU_THREADS if set to a positive integer, otherwise the hardware count.
inline unsigned thread_count() {
    if (const char* env = std::getenv("KSU_THREADS")) {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && n > 0) return static_cast<unsigned>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

// Evaluates f(0..n-1) on a small worker pool. Results and exceptions are
// stored by index, so the output order never depends on scheduling.
template <class R, class F>
void parallel_for_each(std::size_t n, F&& f, std::vector<R>& results, std::vector<std::exception_ptr>& errors) {
    results.assign(n, R{});
    errors.assign(n, nullptr);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                results[i] = f(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(thread_count(), n));
    if (workers <= 1) {
        work();
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
}

}  // namespace ksu::cli
