#include "cstar/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace cstar::par {

int default_threads() {
  if (const char* env = std::getenv("CSTAR_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<int>(std::min(v, 64L));
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(std::min(hw, 64u));
}

void for_rows(int rows, int threads, const std::function<void(int)>& fn) {
  if (rows <= 0) return;
  int t = threads > 0 ? threads : default_threads();
  t = std::min(t, rows);
  if (t <= 1) {
    for (int r = 0; r < rows; ++r) fn(r);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(t);
  for (int i = 0; i < t; ++i) {
    const int lo = static_cast<int>(static_cast<long>(rows) * i / t);
    const int hi = static_cast<int>(static_cast<long>(rows) * (i + 1) / t);
    pool.emplace_back([lo, hi, &fn] {
      for (int r = lo; r < hi; ++r) fn(r);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace cstar::par
