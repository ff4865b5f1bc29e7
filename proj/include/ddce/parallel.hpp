#pragma once

#include <functional>

namespace ddce {

// Worker count for per-face loops. DDCE_THREADS, when set, overrides the
// value passed to set_thread_count.
void set_thread_count(int n);
int thread_count();

void parallel_for(int n, const std::function<void(int)>& fn);

} // namespace ddce
