#pragma once

#include <cstddef>
#include <functional>

namespace isoflect {

/// Hardware concurrency, capped by the ISOFLECT_THREADS environment variable.
std::size_t worker_count();

/// Runs body(i) for i in [0, n) on worker_count() threads in contiguous
/// chunks. The first exception thrown by any worker is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace isoflect
