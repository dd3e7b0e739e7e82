#ifndef ABELFEM_PARALLEL_HPP
#define ABELFEM_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace abelfem::detail {

/// Run body(0..count-1) on up to `threads` workers.  Each index is
/// processed exactly once; callers must keep indices independent so the
/// result does not depend on scheduling.
inline void run_parallel(int count, int threads, const std::function<void(int)>& body) {
  if (threads <= 1 || count <= 1) {
    for (int k = 0; k < count; ++k) body(k);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  const int workers = std::min(threads, count);
  pool.reserve(workers);
  for (int t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      for (int k = next.fetch_add(1); k < count; k = next.fetch_add(1)) body(k);
    });
  for (auto& th : pool) th.join();
}

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

}  // namespace abelfem::detail

#endif
