#pragma once

#include <cstddef>
#include <functional>

namespace epe {

/// Runs body(0..n-1) across up to `threads` workers (0 = machine
/// parallelism). Results must be written to per-index slots; the first
/// exception thrown by any worker is rethrown after all workers join.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

}  // namespace epe
