#pragma once

#include <cstddef>
#include <functional>

namespace qrand {

/// Worker count: hardware concurrency, capped by the QRAND_THREADS
/// environment variable when it holds a positive integer.
std::size_t worker_count();

/// Runs body(i) for i in [0, count) across worker_count() threads. Each index
/// runs exactly once; results must be written to per-index slots so the
/// outcome does not depend on scheduling. The first exception is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace qrand
