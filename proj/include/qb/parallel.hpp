#pragma once

// Process-wide worker count for the embarrassingly parallel loops
// (per-extent enumeration, per-presheaf searches, fuzz cases). Results are
// always merged by index, so the outcome does not depend on the setting.

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace qb {

namespace detail {
inline std::atomic<unsigned>& parallelism_slot() {
    static std::atomic<unsigned> value{1};
    return value;
}
}  // namespace detail

inline void set_parallelism(unsigned n) { detail::parallelism_slot() = n ? n : 1; }
inline unsigned parallelism() { return detail::parallelism_slot(); }

// Runs body(i) for i in [0, count) on the configured number of threads.
// The first exception thrown (lowest index wins) is rethrown on the caller.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(parallelism(), count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto run = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                body(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(run);
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace qb
