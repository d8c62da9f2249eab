#pragma once

#include <cstddef>
#include <functional>

namespace ffbt {

// Worker count used by the parallel loops in the library. 0 selects the
// hardware concurrency.
void set_thread_count(unsigned n);
unsigned thread_count();

// Runs body(i) for i in [0, n). Each index is visited exactly once; results
// written to per-index slots are therefore independent of the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace ffbt
