#pragma once

#include <functional>

namespace qpump {

/// Global worker count for parallel loops. 0 = hardware concurrency.
/// Initialized from the QPUMP_WORKERS environment variable when set.
void set_worker_count(int n);
int worker_count();

/// Run fn(i) for i in [0, n) on the worker pool. Work is partitioned by
/// index, so writes to index-addressed buffers are race-free and results are
/// identical for any worker count. The first exception thrown by a worker is
/// rethrown on the calling thread after all workers join.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace qpump
