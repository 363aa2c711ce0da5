#pragma once

#include <cstddef>
#include <functional>

namespace wvtinfo {

// Worker count for trial-level parallelism: WVT_INFO_THREADS if set to a
// positive integer, otherwise the hardware concurrency (at least 1).
std::size_t default_workers();

// Calls body(i) for every i in [0, count) on up to `workers` threads. Each
// index runs exactly once; callers write results into index-addressed slots so
// that the outcome never depends on scheduling. The first exception thrown by
// any body is rethrown after all workers stop.
void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& body);

}  // namespace wvtinfo
