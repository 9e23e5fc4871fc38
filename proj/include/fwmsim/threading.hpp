#ifndef FWMSIM_THREADING_HPP
#define FWMSIM_THREADING_HPP

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace fwmsim {

// Runs fn(i) for i in [0, n) on up to `threads` workers over contiguous
// index blocks.  Work items must be independent; results keyed by index are
// identical for any thread count.  The lowest-index exception is rethrown.
template <typename Fn>
void parallel_for(int n, int threads, Fn&& fn) {
    threads = std::max(1, std::min(threads, n));
    if (threads == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(static_cast<size_t>(n));
    std::vector<std::thread> pool;
    const int block = (n + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
        const int lo = w * block;
        const int hi = std::min(n, lo + block);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            for (int i = lo; i < hi; ++i) {
                try {
                    fn(i);
                } catch (...) {
                    errors[static_cast<size_t>(i)] = std::current_exception();
                    break;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace fwmsim

#endif
