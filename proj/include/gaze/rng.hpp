#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace gaze {

// Deterministic random source. All sampling primitives are implemented here
// (rather than via std:: distributions) so that a given seed produces the
// same stream on every platform and standard-library version.
//
// Streams are derived, not shared: rng.fork("maze", i) yields an independent
// generator whose output depends only on (root seed, name, index). Training
// and evaluation derive one stream per (purpose, iteration) pair, which makes
// resumption from a checkpoint exact.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), state_(seed ? seed : 0x9E3779B97F4A7C15ULL) {
    // warm up so that small seeds decorrelate
    next_u64();
    next_u64();
  }

  std::uint64_t seed() const { return seed_; }

  Rng fork(std::string_view name, std::uint64_t index = 0) const {
    return Rng(derive_seed(seed_, name, index));
  }

  static std::uint64_t derive_seed(std::uint64_t base, std::string_view name,
                                   std::uint64_t index = 0) {
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a over the stream name
    for (char c : name) {
      h ^= static_cast<std::uint8_t>(c);
      h *= 0x100000001b3ULL;
    }
    h ^= mix(base);
    h ^= mix(index + 0x632be59bd9b4e019ULL);
    return mix(h);
  }

  std::uint64_t next_u64() {
    // xorshift* + splitmix output mixing
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [lo, hi] inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next_u64() % span);
  }

  std::size_t index(std::size_t n) {
    return static_cast<std::size_t>(next_u64() % static_cast<std::uint64_t>(n));
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Box-Muller; each call consumes two uniforms and returns one deviate.
  double normal(double mu = 0.0, double sigma = 1.0) {
    double u1 = uniform();
    if (u1 < 1e-300) u1 = 1e-300;
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mu + sigma * r * std::cos(2.0 * 3.14159265358979323846 * u2);
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t seed_;
  std::uint64_t state_;
};

}  // namespace gaze
