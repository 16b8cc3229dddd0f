#include "qcn/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qcn {

namespace {

int clamp_threads(int n) {
  const int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (hw > 0 && n > 4 * hw) n = 4 * hw;
  return n;
}

int initial_thread_count() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("QCS_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1 && cap < n) n = cap;
  }
  return clamp_threads(n);
}

std::atomic<int> g_threads{0};

}  // namespace

int thread_count() {
  int n = g_threads.load(std::memory_order_relaxed);
  if (n == 0) {
    n = initial_thread_count();
    g_threads.store(n, std::memory_order_relaxed);
  }
  return n;
}

void set_thread_count(int n) {
  g_threads.store(clamp_threads(n), std::memory_order_relaxed);
}

void run_chunks(int n_chunks, const std::function<void(int)>& fn) {
  if (n_chunks <= 0) return;
  const int workers = std::min(thread_count(), n_chunks);
  if (workers <= 1) {
    for (int c = 0; c < n_chunks; ++c) fn(c);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    for (;;) {
      const int c = next.fetch_add(1, std::memory_order_relaxed);
      if (c >= n_chunks) return;
      try {
        fn(c);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (int t = 1; t < workers; ++t) pool.emplace_back(body);
  body();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

double pairwise_sum(const double* data, int n) {
  if (n <= 0) return 0.0;
  if (n <= 8) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += data[i];
    return s;
  }
  const int half = n / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

double reduce_chunks(int n_chunks, const std::function<double(int)>& chunk_sum) {
  std::vector<double> partial(static_cast<size_t>(std::max(n_chunks, 0)), 0.0);
  run_chunks(n_chunks, [&](int c) { partial[static_cast<size_t>(c)] = chunk_sum(c); });
  return pairwise_sum(partial.data(), n_chunks);
}

}  // namespace qcn
