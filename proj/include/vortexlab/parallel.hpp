#ifndef VORTEXLAB_PARALLEL_HPP
#define VORTEXLAB_PARALLEL_HPP

#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace vortexlab {

/// Number of worker threads to use; 0 picks hardware_concurrency.
inline unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

/// Run body(begin, end) over contiguous chunks of [0, count).  Work items
/// must not share mutable state across indices; any thrown exception is
/// rethrown from the chunk with the smallest begin index so failures are
/// reported identically at every thread count.
template <class Body>
void parallel_chunks(std::size_t count, Body&& body, unsigned threads = 0) {
    const unsigned t = resolve_threads(threads);
    if (count == 0) return;
    if (t <= 1 || count == 1) {
        body(std::size_t{0}, count);
        return;
    }
    const std::size_t n_chunks = std::min<std::size_t>(t, count);
    const std::size_t per = count / n_chunks;
    const std::size_t rem = count % n_chunks;
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(n_chunks);
    std::size_t begin = 0;
    for (std::size_t c = 0; c < n_chunks; ++c) {
        const std::size_t len = per + (c < rem ? 1 : 0);
        const std::size_t end = begin + len;
        pool.emplace_back([&body, &errors, c, begin, end] {
            try {
                body(begin, end);
            } catch (...) {
                errors[c] = std::current_exception();
            }
        });
        begin = end;
    }
    for (auto& th : pool) th.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace vortexlab

#endif
