#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <locale>
#include <mutex>
#include <thread>
#include <vector>

namespace revbench {

// libstdc++'s ctype<char> fills its narrow/widen caches lazily on first
// use, which races when regex matching starts on several workers at once.
// Touching every entry from the spawning thread makes later accesses
// read-only.
inline void warm_ctype_caches() {
    for (const std::locale& loc : {std::locale::classic(), std::locale()}) {
        const auto& facet = std::use_facet<std::ctype<char>>(loc);
        for (int c = 1; c < 256; ++c) {
            facet.narrow(static_cast<char>(c), '\0');
            facet.widen(static_cast<char>(c));
        }
    }
}

// Runs fn(i) for i in [0, n) on up to `jobs` threads. The first exception
// thrown by any worker is rethrown after all workers join, so a failing
// batch fails atomically from the caller's perspective.
inline void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn) {
    if (n == 0) return;
    if (jobs <= 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    static const bool caches_ready = [] {
        warm_ctype_caches();
        return true;
    }();
    (void)caches_ready;
    unsigned workers = static_cast<unsigned>(std::min<std::size_t>(jobs, n));
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace revbench
