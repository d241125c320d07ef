#pragma once

#include <cstddef>
#include <functional>

namespace mnsl {

/// Worker count used by parallel_for. 0 selects hardware concurrency.
void set_thread_count(std::size_t threads);
std::size_t thread_count();

/// Runs body(i) for i in [0, n). Iterations must write to disjoint slots;
/// results are then independent of scheduling. A parallel_for issued from
/// inside another runs serially on the calling worker. The first exception
/// thrown (lowest index among those observed) is rethrown after all workers
/// finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace mnsl
