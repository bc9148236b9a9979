#pragma once

#include <cstddef>
#include <functional>

namespace metanet {

/// Worker count used when a caller passes 0: METANET_THREADS if set and
/// positive, else std::thread::hardware_concurrency().
int default_threads();

/// Runs body(i) for i in [0, count) on up to `threads` workers (0 = default).
/// Work items are claimed dynamically; the body must only write to per-index
/// state so results do not depend on the worker count.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

}  // namespace metanet
