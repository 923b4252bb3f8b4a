#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace rpit {

// SplitMix64 (Steele, Lea & Flood 2014; the java.util.SplittableRandom
// mixer). Every randomized routine in the library takes one of these
// explicitly, so a run is reproducible from its seed alone. Sub-streams for
// parallel work come from derive_seed, never from sharing a generator.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1), 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform on the open interval (0, 1); safe to feed into log(1-u).
  double uniform_open01() {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Unbiased integer in [0, n) by rejection below the largest multiple of n.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

  int below_int(int n) { return static_cast<int>(below(static_cast<std::uint64_t>(n))); }

  // Ordered draw of two distinct indices in [0, n); the induced unordered
  // pair is uniform over the n(n-1)/2 possibilities.
  std::pair<int, int> distinct_pair(int n) {
    const int c = below_int(n);
    int d;
    do {
      d = below_int(n);
    } while (d == c);
    return {c, d};
  }

private:
  std::uint64_t state_;
};

// Deterministic sub-seed for task `task` of a run seeded with `master`.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t task) {
  SplitMix64 g(master ^ (0x9E3779B97F4A7C15ull * (task + 1)));
  return g.next();
}

// Uniform random permutation of {1, ..., n} (Fisher-Yates).
inline std::vector<int> random_permutation(int n, SplitMix64& rng) {
  std::vector<int> p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i + 1;
  for (int i = n - 1; i > 0; --i) {
    const int j = rng.below_int(i + 1);
    std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(j)]);
  }
  return p;
}

}  // namespace rpit
