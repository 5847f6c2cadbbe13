#pragma once

#include <cstddef>
#include <functional>

namespace stalab {

/// Worker count: hardware concurrency, capped by STALAB_THREADS when set (>= 1).
std::size_t thread_count();

/// Calls body(i) for i in [0, n) across up to thread_count() threads. Each index
/// is visited exactly once; the first exception thrown is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace stalab
