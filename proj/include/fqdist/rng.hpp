#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "fqdist/error.hpp"

namespace fqdist {

// splitmix64; used to derive independent stream seeds from a master seed so
// that per-trial results do not depend on execution order.
inline std::uint64_t mix_seed(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return mix_seed(master ^ mix_seed(stream));
}

// mt19937_64 with hand-rolled bounded sampling. The engine output sequence is
// pinned by the standard, and rejection sampling avoids the
// implementation-defined std::uniform_int_distribution, so identical seeds
// reproduce identical draws on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Uniform in [0, n).
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw usage_error("Rng::below requires n > 0");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
      v = eng_();
    } while (v >= limit);
    return v % n;
  }

  // Uniform in [0, 1).
  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // k distinct values from [0, n), sorted ascending (partial Fisher-Yates).
  std::vector<std::uint32_t> sample(std::uint64_t n, std::uint64_t k);

 private:
  std::mt19937_64 eng_;
};

inline std::vector<std::uint32_t> Rng::sample(std::uint64_t n, std::uint64_t k) {
  if (k > n) throw usage_error("Rng::sample requires k <= n");
  std::vector<std::uint32_t> pool(n);
  for (std::uint64_t i = 0; i < n; ++i) pool[i] = static_cast<std::uint32_t>(i);
  for (std::uint64_t i = 0; i < k; ++i) {
    const std::uint64_t j = i + below(n - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace fqdist
