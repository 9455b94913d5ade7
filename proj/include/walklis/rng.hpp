#pragma once

#include <cstdint>
#include <initializer_list>

namespace walklis {

// SplitMix64 finalizer; full-avalanche 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

// Folds a path of ids into a seed, giving one stream key per (seed, path).
// Opening the same path twice yields the same stream; distinct paths give
// decorrelated streams, so trials can run in any order or in parallel.
constexpr std::uint64_t derive_seed(std::uint64_t seed,
                                    std::initializer_list<std::uint64_t> path) noexcept {
  std::uint64_t key = mix64(seed + kGoldenGamma);
  for (std::uint64_t id : path) {
    key = mix64(key ^ (kGoldenGamma * (id + 0x632be59bd9b4e019ULL)));
  }
  return key;
}

// Counter-based generator: output i of a stream is mix64(key + i*gamma),
// i.e. SplitMix64 evaluated at an explicit counter.
class Rng {
 public:
  explicit Rng(std::uint64_t key) noexcept : key_(key) {}

  static Rng keyed(std::uint64_t seed, std::initializer_list<std::uint64_t> path) noexcept {
    return Rng(derive_seed(seed, path));
  }

  std::uint64_t next_u64() noexcept { return mix64(key_ + (counter_++) * kGoldenGamma); }

  // Uniform double in [0, 1), 53 random bits.
  double next_unit() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Unbiased uniform draw in [0, bound), bound >= 1; rejection on the
  // wrap-around remainder.
  std::uint64_t next_below(std::uint64_t bound) noexcept {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace walklis
