#pragma once

#include <cstdint>
#include <functional>

namespace cqd {

// Worker cap for the few parallel loops (0 = hardware_concurrency).  Set via
// set_thread_cap or the CQD_THREADS environment variable; results never
// depend on the cap.
void set_thread_cap(int threads);
int thread_cap();

// Runs fn(i) for i in [0, n); fn must only touch slot i of its output.
// Chunks are fixed by index, so the result is identical for any thread count.
void parallel_for(int64_t n, const std::function<void(int64_t)>& fn);

}  // namespace cqd
