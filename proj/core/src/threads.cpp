#include "biwave/threads.hpp"

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace biwave {

std::size_t thread_count() {
    std::size_t n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("BIWAVE_THREADS")) {
        try {
            long v = std::stol(env);
            if (v < 1) v = 1;
            if (static_cast<std::size_t>(v) < n) n = static_cast<std::size_t>(v);
        } catch (...) {
            // unparsable value: keep the hardware default
        }
    }
    return n;
}

namespace {
thread_local bool inside_parallel = false;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    std::size_t workers = thread_count();
    // nested calls run serially so worker counts stay bounded
    if (inside_parallel || workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    if (workers > n) workers = n;
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            inside_parallel = true;
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n || failed.load()) return;
                try {
                    body(i);
                } catch (...) {
                    if (!failed.exchange(true)) err = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failed.load() && err) std::rethrow_exception(err);
}

} // namespace biwave
