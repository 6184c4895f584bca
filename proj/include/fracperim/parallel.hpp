#pragma once

#include <cstddef>
#include <functional>

namespace fracperim::parallel {

/// Worker count: FRACPERIM_THREADS if set to a positive integer, otherwise
/// (unset, empty or 0) the hardware concurrency.
unsigned worker_count();

/// Calls body(i) for every i in [0, n), spread over `workers` threads
/// (0 = worker_count()). Tasks are claimed dynamically, so `body` must write
/// only to slots owned by its index; results are then independent of the
/// worker count. The first exception thrown by any task is rethrown.
void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body, unsigned workers = 0);

}  // namespace fracperim::parallel
