#pragma once

#include <cstddef>
#include <functional>

namespace sqfn {

/// Global worker cap for parallel loops (0 = hardware concurrency).
/// 1 guarantees fully sequential, deterministic execution order.
void set_thread_count(int threads);
int thread_count();

/// Runs fn(i) for i in [0, count). Each index writes only its own outputs,
/// so results are identical for any thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace sqfn
