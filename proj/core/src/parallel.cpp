#include <hecke/parallel.hpp>

#include <atomic>
#include <thread>
#include <vector>

namespace hecke {

static std::atomic<unsigned> g_workers{0};

void set_worker_count(unsigned n) { g_workers.store(n); }

unsigned worker_count() {
  unsigned n = g_workers.load();
  if (n == 0) {
    n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
  }
  return n;
}

void parallel_blocks(uint64_t begin, uint64_t end, uint64_t block_size,
                     const std::function<void(size_t, uint64_t, uint64_t)>& fn) {
  if (begin >= end) return;
  if (block_size == 0) block_size = 1;
  const size_t nblocks = static_cast<size_t>((end - begin + block_size - 1) / block_size);
  const unsigned nw = worker_count();
  if (nw <= 1 || nblocks <= 1) {
    for (size_t b = 0; b < nblocks; ++b) {
      uint64_t lo = begin + b * block_size;
      uint64_t hi = lo + block_size < end ? lo + block_size : end;
      fn(b, lo, hi);
    }
    return;
  }
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (;;) {
      size_t b = next.fetch_add(1);
      if (b >= nblocks) return;
      uint64_t lo = begin + b * block_size;
      uint64_t hi = lo + block_size < end ? lo + block_size : end;
      fn(b, lo, hi);
    }
  };
  std::vector<std::thread> pool;
  unsigned spawn = nw < nblocks ? nw : static_cast<unsigned>(nblocks);
  pool.reserve(spawn);
  for (unsigned i = 0; i + 1 < spawn; ++i) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
}

}  // namespace hecke
