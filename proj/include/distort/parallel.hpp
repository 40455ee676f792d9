#pragma once

#include <cstddef>
#include <functional>

namespace distort {

// Worker count from DISTORT_LAB_THREADS, else the hardware concurrency.
unsigned worker_count();

// Runs body(i) for i in [0,n) on worker_count() threads. Callers write to
// per-index slots so results never depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace distort
