#include "cqd/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace cqd {

namespace {

int g_cap = -1;  // -1 = uninitialized

int env_cap() {
  const char* e = std::getenv("CQD_THREADS");
  if (!e) return 0;
  int v = std::atoi(e);
  return v > 0 ? v : 0;
}

}  // namespace

void set_thread_cap(int threads) { g_cap = threads; }

int thread_cap() {
  int cap = g_cap >= 0 ? g_cap : env_cap();
  if (cap <= 0) cap = (int)std::thread::hardware_concurrency();
  if (cap <= 0) cap = 1;
  return cap;
}

void parallel_for(int64_t n, const std::function<void(int64_t)>& fn) {
  int workers = thread_cap();
  if (workers <= 1 || n < 2) {
    for (int64_t i = 0; i < n; i++) fn(i);
    return;
  }
  if ((int64_t)workers > n) workers = (int)n;
  std::atomic<int64_t> next(0);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; w++)
    pool.emplace_back([&] {
      while (true) {
        int64_t i = next.fetch_add(1);
        if (i >= n) break;
        fn(i);
      }
    });
  for (auto& t : pool) t.join();
}

}  // namespace cqd
