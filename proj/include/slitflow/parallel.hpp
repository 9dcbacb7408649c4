#pragma once

#include <cstddef>
#include <functional>

namespace slitflow {

/// Worker count: explicit argument if > 0, else SLITFLOW_THREADS, else
/// hardware concurrency.
unsigned thread_count(unsigned requested = 0);

/// Run body(i) for i in [0, n).  Work items must be independent; results are
/// written by index so the reduction is deterministic regardless of the
/// number of workers.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  unsigned threads = 0);

}  // namespace slitflow
