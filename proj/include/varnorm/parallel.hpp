#pragma once

#include <cstddef>
#include <functional>

namespace varnorm {

/// Worker count: VARNORM_THREADS if set and positive, else hardware concurrency.
std::size_t thread_count();

/// Runs body(i) for i in [0, n). Each index runs exactly once; results must be
/// written to per-index slots so the outcome does not depend on scheduling.
/// The first exception thrown by any body is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace varnorm
