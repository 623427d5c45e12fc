#ifndef CSTAR_PARALLEL_HPP
#define CSTAR_PARALLEL_HPP

#include <functional>

namespace cstar::par {

// Thread count from the CSTAR_THREADS environment variable; 0, unset or
// unparsable means auto (hardware concurrency, capped at 64).
int default_threads();

// Runs fn(row) for row in [0, rows) over contiguous row blocks. threads <= 0
// means default_threads(). Results must not depend on the partition: callers
// write to disjoint slots or reduce per-block in index order.
void for_rows(int rows, int threads, const std::function<void(int)>& fn);

}  // namespace cstar::par

#endif  // CSTAR_PARALLEL_HPP
