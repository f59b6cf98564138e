#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace icc::detail {

// Runs fn(row_begin, row_end) over contiguous row bands. Callers write only
// to their own rows, so the result does not depend on `threads`.
template <typename Fn>
void parallel_rows(int rows, int threads, Fn&& fn) {
    threads = std::clamp(threads, 1, std::max(1, rows));
    if (threads == 1) {
        fn(0, rows);
        return;
    }
    std::vector<std::jthread> workers;
    workers.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        const int begin = rows * t / threads;
        const int end = rows * (t + 1) / threads;
        workers.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
}

}  // namespace icc::detail
