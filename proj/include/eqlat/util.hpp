#pragma once

#include <cstdint>
#include <exception>
#include <functional>
#include <string_view>
#include <thread>
#include <vector>

namespace eqlat {

// SplitMix64. The one generator used for every random draw in the project:
// the sequence depends only on the 64-bit seed, never on platform, compiler
// or thread count.
struct SplitMix64 {
  uint64_t state;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n). Modulo reduction; the bias is ~n/2^64.
  uint64_t next_below(uint64_t n) { return next() % n; }

  double next_unit() { return double(next() >> 11) * 0x1.0p-53; }
};

inline uint64_t mix64(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Seed of the `index`-th substream of a seeded family. Items drawn from
// distinct substreams can be generated in any order (or in parallel) with
// identical results.
inline uint64_t substream(uint64_t seed, uint64_t index) {
  return mix64(seed + 0x9e3779b97f4a7c15ull * (index + 1));
}

inline uint64_t fnv1a64(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

// Runs fn(i) for every i in [0, count) on up to `threads` workers, each
// worker owning a contiguous block. Writes from distinct indices must not
// alias; under that contract the result is independent of `threads`.
inline void parallel_for(int64_t count, int threads,
                         const std::function<void(int64_t)>& fn) {
  if (count <= 0) return;
  if (threads <= 0) threads = int(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  if (int64_t(threads) > count) threads = int(count);
  if (threads == 1) {
    for (int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(size_t(threads));
  int64_t chunk = (count + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    int64_t lo = int64_t(t) * chunk;
    int64_t hi = lo + chunk < count ? lo + chunk : count;
    pool.emplace_back([&, t, lo, hi] {
      try {
        for (int64_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        errors[size_t(t)] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace eqlat
