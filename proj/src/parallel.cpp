#include "qpump/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <mutex>
#include <thread>
#include <vector>

namespace qpump {

namespace {

int g_workers = -1;  // -1 = uninitialized

int env_workers() {
  if (const char* s = std::getenv("QPUMP_WORKERS")) {
    const int v = std::atoi(s);
    if (v > 0) return v;
  }
  return 0;
}

int effective_workers() {
  if (g_workers == -1) g_workers = env_workers();
  int n = g_workers;
  if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
  return n > 0 ? n : 1;
}

}  // namespace

void set_worker_count(int n) { g_workers = n < 0 ? 0 : n; }

int worker_count() { return effective_workers(); }

void parallel_for(int n, const std::function<void(int)>& fn) {
  if (n <= 0) return;
  const int workers = std::min(effective_workers(), n);
  if (workers == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }

  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto body = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace qpump
