#include "blindsearch/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <mutex>

namespace blindsearch {

int worker_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("BLINDSEARCH_THREADS"); env && *env) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_chunks(std::size_t n, std::size_t chunks, int workers,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
    if (n == 0) return;
    chunks = std::clamp<std::size_t>(chunks, 1, n);
    auto bounds = [&](std::size_t c) { return n * c / chunks; };
    const std::size_t threads = std::min<std::size_t>(chunks, static_cast<std::size_t>(std::max(workers, 1)));
    if (threads <= 1) {
        for (std::size_t c = 0; c < chunks; ++c) fn(c, bounds(c), bounds(c + 1));
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t w = 0; w < threads; ++w) {
            pool.emplace_back([&] {
                for (std::size_t c = next++; c < chunks; c = next++) {
                    try {
                        fn(c, bounds(c), bounds(c + 1));
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                    }
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
}

}  // namespace blindsearch
