#pragma once

#include <cstddef>
#include <functional>

namespace synergy {

/// Worker count: SYNERGY_THREADS when set to a positive integer, else the
/// hardware concurrency.
int thread_count();

/// Calls fn(i) for i in [0, count) across up to thread_count() threads.
/// The exception of the lowest failing index is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace synergy
