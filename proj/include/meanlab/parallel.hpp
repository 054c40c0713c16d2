#pragma once

#include <cstddef>
#include <functional>

namespace meanlab {

/// Worker count from MEANLAB_THREADS; unset, empty or 0 means hardware concurrency.
unsigned worker_count();

/// Calls body(i) for i in [0, n) across worker_count() threads. Each index is
/// visited exactly once; callers write results into per-index slots and
/// reduce afterwards, so the outcome does not depend on scheduling. The first
/// exception thrown by any body is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace meanlab
