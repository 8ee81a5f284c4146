// random.hpp - the reproducibility contract for every sampled quantity.
//
// Generator: std::mt19937_64 (fully specified by the standard, so streams are
// identical across platforms). Substreams: a stream is keyed by (seed, index)
// and seeded with splitmix64(splitmix64(seed) ^ splitmix64(index + 1)).
// Uniforms are built from raw 64-bit outputs here rather than through
// <random> distributions, whose algorithms are implementation-defined.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace rwlab {

std::uint64_t splitmix64(std::uint64_t x);

/// Seed for substream `index` of master seed `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t seed, std::uint64_t stream) : engine_(derive_seed(seed, stream)) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound), bound > 0. Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t bound);

  bool coin() { return (engine_() >> 63) != 0; }

  template <class T>
  void shuffle(std::vector<T>& xs) {
    for (std::size_t i = xs.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(xs[i - 1], xs[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace rwlab
