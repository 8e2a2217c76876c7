// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>

namespace beamsynth {

// Worker count to use: `requested` when > 0, else $BEAMSYNTH_THREADS when set
// to a positive integer, else std::thread::hardware_concurrency() (min 1).
int resolve_thread_count(int requested);

// Calls fn(i) for every i in [0, n) on up to `threads` workers. Each index is
// visited exactly once; callers write results by index so the outcome does not
// depend on scheduling. The first exception thrown by fn is rethrown.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace beamsynth
