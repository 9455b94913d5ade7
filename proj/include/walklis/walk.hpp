#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "walklis/rng.hpp"
#include "walklis/step_law.hpp"

namespace walklis {

// Draws i.i.d. steps of a given law from one counter-based stream.
// Simple-law steps consume one bit each from a buffered word, so long
// +-1 walks cost well under a nanosecond per step.
class StepSampler {
 public:
  StepSampler(const StepLaw& law, Rng rng);

  // One scalar increment of the law (already rescaled to unit variance).
  double next_coord();

  // Writes law.dimension coordinates of one step.
  void next_step(double* out) {
    for (int c = 0; c < law_.dimension; ++c) out[c] = next_coord();
  }

  const StepLaw& law() const { return law_; }

 private:
  StepLaw law_;
  Rng rng_;
  double scale_ = 1.0;
  std::uint64_t bits_ = 0;
  int bits_left_ = 0;
  std::uint64_t uniform_range_ = 0;
  double spare_normal_ = 0.0;
  bool has_spare_normal_ = false;
};

// A d-dimensional trajectory S(0..n) with S(0) = 0, stored row-major as
// (n+1) x d values. Immutable after construction.
struct Walk {
  StepLaw law;
  std::uint64_t seed = 0;
  std::int64_t steps = 0;
  std::vector<double> values;  // (steps+1) * dimension

  int dim() const { return law.dimension; }
  std::int64_t points() const { return steps + 1; }

  double at(std::int64_t t, int coord = 0) const { return values[t * dim() + coord]; }

  std::span<const double> point(std::int64_t t) const {
    return {values.data() + t * dim(), static_cast<std::size_t>(dim())};
  }

  // 1-d view of all positions.
  std::span<const double> series() const;

  // True when every position is an exactly-representable integer, so the
  // equality tests used by hitting and level-set logic are exact.
  bool integer_valued() const;

  // Wraps explicit values (d-dim, row-major) as a walk with law "custom".
  static Walk from_values(std::vector<double> vals, int dimension = 1);
};

// Deterministic in (law, n, seed); the stream key is derived from seed
// alone, so callers create per-trial seeds with derive_seed().
Walk generate_walk(const StepLaw& law, std::int64_t n, std::uint64_t seed);

// Smallest t >= 0 with S(t) == level, if attained. 1-d walks only.
std::optional<std::int64_t> hitting_time(const Walk& walk, double level);

struct HitResult {
  Walk walk;
  bool hit = false;  // false: cap exceeded, walk holds the censored prefix
};

// Runs a 1-d integer-valued walk until it first attains `level` (> 0) or
// `cap` steps have been taken. Censoring is reported, never truncated away.
HitResult generate_until_hit(const StepLaw& law, std::int64_t level, std::uint64_t seed,
                             std::int64_t cap);

}  // namespace walklis
