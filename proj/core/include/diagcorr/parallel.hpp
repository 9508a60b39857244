#pragma once

#include <cstddef>
#include <functional>

namespace diagcorr {

/// Worker count: DIAGCORR_THREADS if set and positive, else hardware concurrency.
unsigned worker_count();

/// Runs body(worker, begin, end) over contiguous chunks of [0, count). Chunk
/// boundaries depend only on `count` and the worker count; callers that need
/// results independent of the worker count must combine per-index results.
void parallel_chunks(std::size_t count,
                     const std::function<void(unsigned worker, std::size_t begin, std::size_t end)>& body);

/// Calls body(i) for every i in [0, count), distributed over workers.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace diagcorr
