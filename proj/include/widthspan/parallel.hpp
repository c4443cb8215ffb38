#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace widthspan {

/// Worker count: `requested` if positive, else WIDTHSPAN_JOBS, else 1.
inline int resolve_jobs(int requested) {
    if (requested > 0) {
        return requested;
    }
    if (const char* env = std::getenv("WIDTHSPAN_JOBS")) {
        try {
            const int value = std::stoi(env);
            if (value > 0) {
                return value;
            }
        } catch (const std::exception&) {
        }
    }
    return 1;
}

/*
 * Runs body(i) for i in [0, count) on up to `jobs` threads. Each index is
 * handled exactly once; callers write results into slot i so the merged output
 * does not depend on scheduling. The first exception thrown by any body is
 * rethrown after all workers stop.
 */
template <typename Body>
void parallel_for(int count, int jobs, Body&& body) {
    jobs = std::clamp(jobs, 1, std::max(count, 1));
    if (jobs == 1) {
        for (int i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next.store(count);
            }
        }
    };
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(jobs) - 1);
    for (int t = 1; t < jobs; ++t) {
        threads.emplace_back(worker);
    }
    worker();
    for (auto& t : threads) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

}  // namespace widthspan
