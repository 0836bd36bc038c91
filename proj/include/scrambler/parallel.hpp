#ifndef SCRAMBLER_PARALLEL_HPP
#define SCRAMBLER_PARALLEL_HPP

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace scrambler {

// SCRAMBLER_THREADS caps the worker count; unset or 0 means all hardware
// threads.
inline std::size_t worker_count() {
    std::size_t hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("SCRAMBLER_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v > 0 && static_cast<std::size_t>(v) < hw) return static_cast<std::size_t>(v);
        if (v > 0) return static_cast<std::size_t>(v);
    }
    return hw;
}

// Runs fn(i) for i in [0, count). Callers are responsible for writing results
// into index-addressed slots so the outcome is independent of scheduling.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
    std::size_t workers = worker_count();
    if (count <= 1 || workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    if (workers > count) workers = count;
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                fn(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace scrambler

#endif
