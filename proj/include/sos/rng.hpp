#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace sos {

// Deterministic random source. Draws are derived from the raw mt19937_64
// output stream instead of std:: distributions, whose results are
// implementation-defined; runs must be bit-repeatable across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), gen_(seed) {}

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n). n must be > 0.
  std::uint64_t below(std::uint64_t n) {
    // rejection keeps the draw unbiased
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - (max % n);
    std::uint64_t v = gen_();
    while (v >= limit) v = gen_();
    return v % n;
  }

  template <class T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[below(i)]);
    }
  }

  /// Independent stream derived from the original seed; decouples scenario
  /// construction draws from simulation draws.
  Rng fork(std::uint64_t stream) const { return Rng(mix(seed_, stream)); }

  static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
};

}  // namespace sos
