#pragma once

#include <cstddef>
#include <functional>

namespace d2d {

/// Worker count used by parallel_for. Defaults to the hardware concurrency.
unsigned thread_count();
void set_thread_count(unsigned threads);

/// Runs body(i) for i in [0, n). Iterations are independent; callers write
/// results into index-addressed storage so that the outcome does not depend
/// on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace d2d
