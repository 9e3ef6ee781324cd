#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace depthstab {

// Pool size from DEPTHSTAB_THREADS, else the hardware concurrency.
inline std::size_t worker_count() {
    if (const char *env = std::getenv("DEPTHSTAB_THREADS")) {
        try {
            long v = std::stol(env);
            if (v >= 1)
                return static_cast<std::size_t>(v);
        } catch (const std::exception &) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

// Applies fn to every item on a pool of workers and hands results to sink in
// input order. Items are processed in batches so long streams need not be
// held in memory all at once. fn must not throw.
template <typename Item, typename Fn, typename Sink>
void ordered_parallel_map(const std::vector<Item> &items, Fn &&fn, Sink &&sink, std::size_t threads = 0,
                          std::size_t batch = 256) {
    if (threads == 0)
        threads = worker_count();
    using Result = decltype(fn(items.front()));
    for (std::size_t start = 0; start < items.size(); start += batch) {
        const std::size_t end = std::min(items.size(), start + batch);
        std::vector<std::optional<Result>> results(end - start);
        if (threads == 1) {
            for (std::size_t i = start; i < end; ++i)
                results[i - start].emplace(fn(items[i]));
        } else {
            std::atomic<std::size_t> next{start};
            std::vector<std::thread> pool;
            for (std::size_t t = 0; t < std::min(threads, end - start); ++t)
                pool.emplace_back([&] {
                    for (std::size_t i; (i = next.fetch_add(1)) < end;)
                        results[i - start].emplace(fn(items[i]));
                });
            for (auto &th : pool)
                th.join();
        }
        for (auto &r : results)
            sink(std::move(*r));
    }
}

} // namespace depthstab
