#pragma once

#include <functional>

namespace holodyn {

/// Global worker count for grid renders (1 = sequential).  Output must not
/// depend on the value: work items write disjoint slots only.
void set_thread_count(int n);
int thread_count();

/// Run fn(i) for i in [0, n) on the configured number of threads with a
/// static block partition.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace holodyn
