#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace csst {

/// Deterministic 64-bit generator (splitmix64); stable across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, n) by rejection; n > 0.
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t threshold = (~n + 1) % n;  // 2^64 mod n
    for (;;) {
      std::uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Splits [0, n) into chunks; `fn(chunk_index, begin, end)` runs on worker
/// threads. Reductions must be order-independent.
inline void parallel_chunks(std::size_t n, int jobs,
                            const std::function<void(int, std::size_t, std::size_t)>& fn) {
  if (jobs <= 1 || n < 2048) {
    fn(0, 0, n);
    return;
  }
  int workers = std::min<std::size_t>(jobs, n);
  std::vector<std::thread> threads;
  std::size_t chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    std::size_t b = w * chunk, e = std::min(n, b + chunk);
    if (b >= e) break;
    threads.emplace_back(fn, w, b, e);
  }
  for (auto& th : threads) th.join();
}

}  // namespace csst
