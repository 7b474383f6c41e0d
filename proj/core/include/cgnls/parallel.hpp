#pragma once

#include <cstddef>
#include <functional>

namespace cgnls {

// Worker count used by parallel maps; 0 selects the hardware concurrency.
void set_thread_count(int n);
int thread_count();

// Calls fn(i) for i in [0, n) across the worker pool and rethrows the first
// exception raised by any call.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace cgnls
