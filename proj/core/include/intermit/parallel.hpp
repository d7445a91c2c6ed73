#pragma once

#include <cstddef>
#include <functional>

namespace intermit {

/// Calls fn(i) for i in [0, n) on up to `workers` threads.
///
/// Work is handed out in chunks from a shared counter, so the assignment of
/// indices to threads varies from run to run. Callers must make fn(i)
/// depend on i alone. The first exception thrown by any call is rethrown
/// after all threads have stopped.
void parallel_for(std::size_t n, unsigned workers, std::function<void(std::size_t)> const& fn);

/// Worker count to use when the caller passes 0.
unsigned default_workers();

}  // namespace intermit
