#pragma once

#include <cstddef>
#include <functional>

namespace mwdlab {

/// Worker count for row-parallel loops. 0 restores the default, which reads
/// MWDLAB_THREADS and falls back to hardware concurrency.
void set_thread_count(std::size_t n);
std::size_t thread_count();

/// Calls fn(i) for i in [0, n) across worker threads. The first exception
/// thrown by any call is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace mwdlab
