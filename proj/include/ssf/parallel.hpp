#pragma once

#include <cstddef>
#include <functional>

namespace ssf {

/// Worker count used by parallel_for; defaults to hardware concurrency.
void set_thread_count(unsigned n);
unsigned thread_count();

/// Calls body(i) for i in [0, n), statically partitioned over worker threads.
/// Each index is visited exactly once, so results written per index are
/// independent of the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace ssf
