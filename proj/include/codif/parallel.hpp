#ifndef CODIF_PARALLEL_HPP
#define CODIF_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace codif {

/// Worker count: CODIF_WORKERS if set to a positive integer, otherwise
/// std::thread::hardware_concurrency() (at least 1).
unsigned worker_count();

/// Calls body(i) for every i in [0, count) across worker_count() threads.
/// Each index is visited exactly once; callers write results into
/// per-index slots so the outcome does not depend on scheduling. The first
/// exception thrown by any worker is rethrown on the calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace codif

#endif  // CODIF_PARALLEL_HPP
