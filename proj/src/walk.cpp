#include "walklis/walk.hpp"

#include <cmath>
#include <stdexcept>

namespace walklis {

StepSampler::StepSampler(const StepLaw& law, Rng rng) : law_(law), rng_(rng) {
  if (law.kind == LawKind::custom) {
    throw std::invalid_argument("cannot sample steps of a custom walk");
  }
  scale_ = law.step_scale();
  if (law.kind == LawKind::uniform) {
    uniform_range_ = static_cast<std::uint64_t>(2 * law.uniform_half_width + 1);
  }
}

double StepSampler::next_coord() {
  switch (law_.kind) {
    case LawKind::simple: {
      if (bits_left_ == 0) {
        bits_ = rng_.next_u64();
        bits_left_ = 64;
      }
      const double s = (bits_ & 1u) ? 1.0 : -1.0;
      bits_ >>= 1;
      --bits_left_;
      return s;
    }
    case LawKind::lazy: {
      if (bits_left_ < 2) {
        bits_ = rng_.next_u64();
        bits_left_ = 64;
      }
      const unsigned two = bits_ & 3u;
      bits_ >>= 2;
      bits_left_ -= 2;
      const double raw = (two == 0) ? -1.0 : (two == 3) ? 1.0 : 0.0;
      return raw * scale_;
    }
    case LawKind::uniform: {
      const std::int64_t v =
          static_cast<std::int64_t>(rng_.next_below(uniform_range_)) - law_.uniform_half_width;
      return static_cast<double>(v) * scale_;
    }
    case LawKind::normal: {
      if (has_spare_normal_) {
        has_spare_normal_ = false;
        return spare_normal_;
      }
      const double u1 = 1.0 - rng_.next_unit();  // (0, 1]
      const double u2 = rng_.next_unit();
      const double r = std::sqrt(-2.0 * std::log(u1));
      const double theta = 6.283185307179586476925286766559 * u2;
      spare_normal_ = r * std::sin(theta);
      has_spare_normal_ = true;
      return r * std::cos(theta);
    }
    case LawKind::custom: break;
  }
  throw std::logic_error("unreachable step law");
}

std::span<const double> Walk::series() const {
  if (dim() != 1) throw std::invalid_argument("series() requires a 1-d walk");
  return {values.data(), values.size()};
}

bool Walk::integer_valued() const {
  if (law.kind == LawKind::simple) return true;
  if (law.kind != LawKind::custom) return false;
  for (double v : values) {
    if (!(std::abs(v) < 9007199254740992.0) || v != std::floor(v)) return false;
  }
  return true;
}

Walk Walk::from_values(std::vector<double> vals, int dimension) {
  if (dimension < 1) throw std::invalid_argument("walk dimension must be >= 1");
  if (vals.empty() || vals.size() % static_cast<std::size_t>(dimension) != 0) {
    throw std::invalid_argument("walk values must be a nonempty multiple of the dimension");
  }
  Walk w;
  w.law.kind = LawKind::custom;
  w.law.dimension = dimension;
  w.steps = static_cast<std::int64_t>(vals.size() / static_cast<std::size_t>(dimension)) - 1;
  w.values = std::move(vals);
  return w;
}

Walk generate_walk(const StepLaw& law, std::int64_t n, std::uint64_t seed) {
  if (n < 0) throw std::invalid_argument("step count must be >= 0");
  Walk w;
  w.law = law;
  w.seed = seed;
  w.steps = n;
  const int d = law.dimension;
  w.values.assign(static_cast<std::size_t>((n + 1)) * d, 0.0);
  StepSampler sampler(law, Rng::keyed(seed, {}));
  for (std::int64_t t = 1; t <= n; ++t) {
    double* cur = w.values.data() + t * d;
    const double* prev = cur - d;
    for (int c = 0; c < d; ++c) cur[c] = prev[c] + sampler.next_coord();
  }
  return w;
}

std::optional<std::int64_t> hitting_time(const Walk& walk, double level) {
  if (walk.dim() != 1) throw std::invalid_argument("hitting_time requires a 1-d walk");
  for (std::int64_t t = 0; t <= walk.steps; ++t) {
    if (walk.values[t] == level) return t;
  }
  return std::nullopt;
}

HitResult generate_until_hit(const StepLaw& law, std::int64_t level, std::uint64_t seed,
                             std::int64_t cap) {
  if (law.dimension != 1 || !law.integer_valued()) {
    throw std::invalid_argument("generate_until_hit requires a 1-d integer-valued law");
  }
  if (level <= 0) throw std::invalid_argument("level must be > 0");
  if (cap <= 0) throw std::invalid_argument("cap must be > 0");

  HitResult result;
  result.walk.law = law;
  result.walk.seed = seed;
  StepSampler sampler(law, Rng::keyed(seed, {}));
  auto& vals = result.walk.values;
  vals.reserve(1024);
  vals.push_back(0.0);
  double pos = 0.0;
  const double target = static_cast<double>(level);
  for (std::int64_t t = 1; t <= cap; ++t) {
    pos += sampler.next_coord();
    vals.push_back(pos);
    if (pos == target) {
      result.hit = true;
      break;
    }
  }
  result.walk.steps = static_cast<std::int64_t>(vals.size()) - 1;
  return result;
}

}  // namespace walklis
