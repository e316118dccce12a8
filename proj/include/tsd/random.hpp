#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace tsd {

/// Portable seeded source. The engine's output sequence is fixed by the C++
/// standard; the integer and real draws below are written out by hand because
/// the standard distributions differ between library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw std::invalid_argument("uniform: empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo);
    if (span == ~0ull) return static_cast<std::int64_t>(next());
    const std::uint64_t range = span + 1;
    const std::uint64_t limit = ~0ull - (~0ull % range);  // reject the biased tail
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return lo + static_cast<std::int64_t>(x % range);
  }

  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(n) - 1)); }

  /// Uniform in [0, 1) with 53 random bits.
  double real() { return static_cast<double>(next() >> 11) * (1.0 / 9007199254740992.0); }

  bool chance(double p) { return real() < p; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[index(i)]);
  }

  /// k distinct sorted values from [lo, hi].
  std::vector<std::int64_t> sorted_sample(std::int64_t lo, std::int64_t hi, std::size_t k) {
    const auto width = static_cast<std::size_t>(hi - lo + 1);
    if (k > width) throw std::invalid_argument("sorted_sample: range too small");
    std::vector<std::int64_t> pool(width);
    for (std::size_t i = 0; i < width; ++i) pool[i] = lo + static_cast<std::int64_t>(i);
    for (std::size_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + index(width - i)]);
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace tsd
