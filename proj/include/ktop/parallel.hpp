#pragma once

#include <cstddef>
#include <functional>

namespace ktop {

/// Run fn(i) for i in [0, count) on a small thread pool with static chunking.
/// Callers store results by index, so output is identical to the serial run
/// regardless of scheduling. Exceptions are captured and rethrown once.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace ktop
