#include "skspin/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace skspin {

int thread_count() {
  if (const char* env = std::getenv("SKSPIN_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return std::min(n, 256);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(std::min(hw, 64u));
}

int chunk_count(long n_items) {
  if (n_items <= 0) return 0;
  return static_cast<int>(std::min<long>(n_items, 128));
}

void parallel_for_chunks(long n_items,
                         const std::function<void(int chunk, long begin, long end)>& body) {
  const int chunks = chunk_count(n_items);
  if (chunks == 0) return;

  auto chunk_range = [&](int c) {
    const long begin = n_items * c / chunks;
    const long end = n_items * (c + 1) / chunks;
    return std::pair<long, long>(begin, end);
  };

  const int workers = std::min(thread_count(), chunks);
  if (workers <= 1) {
    for (int c = 0; c < chunks; ++c) {
      auto [b, e] = chunk_range(c);
      body(c, b, e);
    }
    return;
  }

  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int c = next.fetch_add(1); c < chunks; c = next.fetch_add(1)) {
        auto [b, e] = chunk_range(c);
        body(c, b, e);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace skspin
