#pragma once

#include <cstddef>
#include <functional>

namespace loopbu {

// Thread count from LOOPBU_THREADS when set to a positive value, otherwise
// the hardware concurrency.
int default_thread_count();

// Runs body(i) for i in [0, count) on up to `threads` workers (0 = default).
// Each index is processed exactly once; the first exception is rethrown after
// all workers finish.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

}  // namespace loopbu
