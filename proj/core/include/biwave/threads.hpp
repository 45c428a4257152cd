#ifndef BIWAVE_THREADS_HPP
#define BIWAVE_THREADS_HPP

#include <cstddef>
#include <functional>

namespace biwave {

/// Worker count: hardware concurrency capped by the BIWAVE_THREADS
/// environment variable when set (values < 1 mean single-threaded).
std::size_t thread_count();

/// Runs body(i) for i in [0, n) on a transient worker pool.  Every index
/// writes its own slot, so callers reduce afterwards in index order and
/// results do not depend on the schedule.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace biwave

#endif
