#pragma once

#include <cstddef>
#include <functional>

namespace trapwell {

// Worker count: TRAPWELL_THREADS if set and positive, else hardware concurrency.
unsigned thread_count();

// Calls fn(i) for i in [0, n) on up to thread_count() threads.  The first
// exception thrown by any call is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace trapwell
