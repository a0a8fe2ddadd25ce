#pragma once

#include <cstddef>
#include <functional>

namespace dualsolver {

// Worker count for batch/coordinate parallelism. Reads DUALSOLVE_THREADS on
// every call so tests can vary it; falls back to hardware concurrency capped
// at 8.
std::size_t worker_count();

// Runs fn(i) for i in [0, n). Each index owns its output slot, and callers
// reduce in index order afterwards, so results do not depend on the worker
// count. fn must not throw past its own bounds; exceptions are rethrown on
// the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace dualsolver
