#pragma once

#include <cstddef>
#include <functional>

namespace turanlab {

/// Hardware concurrency, capped by TURANLAB_THREADS when set to a positive integer.
unsigned worker_count();

/// Runs body(i) for i in [0, count) on up to worker_count() threads. Indices
/// are handed out dynamically; callers write results into per-index slots so
/// the outcome does not depend on scheduling. The first exception thrown by
/// any body is rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace turanlab
