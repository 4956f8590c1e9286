#pragma once

#include <cstdint>
#include <functional>

namespace hecke {

// Worker-pool size used by every parallel loop; the CLI sets this from its
// --threads flag. 0 means hardware_concurrency.
void set_worker_count(unsigned n);
unsigned worker_count();

// Runs fn(block_index, lo, hi) over [begin, end) split into fixed-size
// blocks. Block boundaries depend only on block_size, never on the worker
// count, so any per-block outputs are deterministic; callers merge blocks
// in index order.
void parallel_blocks(uint64_t begin, uint64_t end, uint64_t block_size,
                     const std::function<void(size_t, uint64_t, uint64_t)>& fn);

}  // namespace hecke
