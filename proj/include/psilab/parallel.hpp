#ifndef PSILAB_PARALLEL_HPP
#define PSILAB_PARALLEL_HPP

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace psilab {

/// Worker count: explicit request > PSI_LAB_THREADS > hardware concurrency.
inline int default_threads(int requested = 0) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("PSI_LAB_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? (int)hc : 1;
}

namespace detail {

/// Static block partition of [0,n). Each index writes only its own slot, so
/// results do not depend on the worker count.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                         int threads = 0) {
  const int nt = std::min<std::size_t>(default_threads(threads), n ? n : 1);
  if (nt <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (int t = 0; t < nt; ++t) {
    pool.emplace_back([&, t]() {
      for (std::size_t i = t; i < n; i += nt) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace detail
}  // namespace psilab

#endif  // PSILAB_PARALLEL_HPP
