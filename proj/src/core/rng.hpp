#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string_view>
#include <vector>

namespace spmagic {

// Seeded random stream. All distributions are derived from the raw engine
// output instead of std:: distributions so that draws are identical across
// standard library implementations. `split` derives an independent stream
// from the root seed and a stage tag, which keeps pipeline stages (mask,
// init, shuffle, kmeans, synthetic) independently reproducible.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix(seed)) {}

  std::uint64_t next() { return engine_(); }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller.
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) {
      u1 = uniform();
    }
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return r * std::cos(6.283185307179586476925286766559 * u2);
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Uniform integer in [0, n), rejection sampled to avoid modulo bias.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t rem = (max % n + 1) % n;  // 2^64 mod n
    std::uint64_t x = next();
    while (rem != 0 && x >= max - rem + 1) {
      x = next();
    }
    return x % n;
  }

  template <typename T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::swap(values[i - 1], values[below(i)]);
    }
  }

  // Derived stream; independent of how many draws were taken from this one.
  Rng split(std::string_view stage) const {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    for (const char c : stage) {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ull;
    }
    return Rng(mix(seed_ ^ h));
  }

  std::uint64_t seed() const { return seed_; }

 private:
  static std::uint64_t mix(std::uint64_t x) {  // splitmix64 finalizer
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }

  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace spmagic
