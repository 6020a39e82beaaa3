#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace icosa {

// Thread cap from ICOSA_THREADS (>=1); defaults to hardware concurrency.
inline int thread_limit() {
    if (const char* env = std::getenv("ICOSA_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// Static-chunk parallel loop. The body must write only to its own index.
inline void parallel_for(int n, const std::function<void(int)>& body) {
    int nthreads = std::min(thread_limit(), std::max(1, n));
    if (nthreads <= 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nthreads));
    for (int t = 0; t < nthreads; ++t) {
        pool.emplace_back([&, t]() {
            for (int i = t; i < n; i += nthreads) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace icosa
