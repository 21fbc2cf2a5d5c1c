#pragma once

#include <cstddef>
#include <functional>

namespace circlemap {

// Number of worker threads used by parallel_for. 0 selects
// std::thread::hardware_concurrency().
void set_thread_count(unsigned n);
unsigned thread_count();

// Runs body(i) for i in [0, n). Each index must only write its own output
// slot; results are then identical for every thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace circlemap
