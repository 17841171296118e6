#include "stabfv/parallel.hpp"

#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include <tbb/blocked_range.h>
#include <tbb/parallel_for.h>
#include <tbb/task_arena.h>

namespace stabfv {

namespace {

tbb::task_arena& arena_for(int workers) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<tbb::task_arena>> arenas;
  std::lock_guard lock(mutex);
  auto& slot = arenas[workers];
  if (!slot) slot = std::make_unique<tbb::task_arena>(workers);
  return *slot;
}

}  // namespace

int default_worker_count() {
  if (const char* env = std::getenv("STABFV_WORKERS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (...) {
      // fall through to the hardware default
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(int n, int workers, const std::function<void(int)>& body) {
  if (n <= 0) return;
  if (workers <= 1 || n == 1) {
    for (int k = 0; k < n; ++k) body(k);
    return;
  }
  arena_for(workers).execute([&] {
    tbb::parallel_for(tbb::blocked_range<int>(0, n), [&](const tbb::blocked_range<int>& r) {
      for (int k = r.begin(); k != r.end(); ++k) body(k);
    });
  });
}

}  // namespace stabfv
