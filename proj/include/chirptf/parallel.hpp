#pragma once

#include <cstddef>
#include <functional>

namespace chirptf {

/// Worker count: CHIRPTF_THREADS if set and > 0, otherwise hardware concurrency.
std::size_t worker_count();

/// Runs body(i) for i in [0, n) over contiguous chunks.  Each index is visited
/// exactly once, so results written per index are schedule-independent.
/// The first exception thrown by any worker is rethrown on the caller.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace chirptf
