#pragma once

#include <functional>

namespace stabfv {

/// Worker count from STABFV_WORKERS, else the hardware concurrency.
int default_worker_count();

/// Runs body(k) for k in [0, n). Each index is visited exactly once, so any
/// per-index result is independent of the worker count.
void parallel_for(int n, int workers, const std::function<void(int)>& body);

}  // namespace stabfv
