#pragma once

#include <cstddef>
#include <functional>

namespace rancova {

// Resolve a worker-count request: values < 1 mean "use hardware concurrency".
int resolve_threads(int requested) noexcept;

// Run fn(0..n-1) across up to `threads` workers. Tasks pull indices from a
// shared counter; callers must write any output keyed by index so the result
// is independent of scheduling. The first exception thrown by a task is
// rethrown on the calling thread after all workers finish.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace rancova
