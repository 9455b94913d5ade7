#include "walklis/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "walklis/lis.hpp"
#include "walklis/parallel.hpp"

namespace walklis {

int ord2(std::int64_t x) {
  if (x == 0) return kOrd2Infinity;
  int k = 0;
  while ((x & 1) == 0) {
    x >>= 1;
    ++k;
  }
  return k;
}

VisitTrace record_visits_until_hit(StepSampler& sampler, int order, std::int64_t cap) {
  if (sampler.law().kind != LawKind::simple || sampler.law().dimension != 1) {
    throw std::invalid_argument("dyadic construction requires the 1-d simple law");
  }
  if (order < 1 || order > 30) throw std::invalid_argument("dyadic order must be in [1, 30]");
  if (cap <= 0) throw std::invalid_argument("cap must be > 0");

  VisitTrace trace;
  trace.order = order;
  const std::int64_t target = std::int64_t{1} << order;
  trace.visits.assign(static_cast<std::size_t>(target) + 1, {});
  trace.visits[0].push_back(0);
  std::int64_t pos = 0;
  for (std::int64_t t = 1; t <= cap; ++t) {
    pos += static_cast<std::int64_t>(sampler.next_coord());
    if (pos >= 0 && pos <= target) trace.visits[static_cast<std::size_t>(pos)].push_back(t);
    if (pos == target) {
      trace.hit = true;
      trace.tau = t;
      trace.steps = t;
      return trace;
    }
  }
  trace.steps = cap;
  return trace;
}

VisitTrace extract_visit_trace(const Walk& walk, int order) {
  if (walk.dim() != 1) throw std::invalid_argument("dyadic construction requires a 1-d walk");
  if (order < 1 || order > 30) throw std::invalid_argument("dyadic order must be in [1, 30]");
  if (!walk.integer_valued()) {
    throw std::invalid_argument("dyadic construction requires an integer-valued walk");
  }
  const std::int64_t target = std::int64_t{1} << order;
  if (walk.steps < 1 || walk.values.back() != static_cast<double>(target)) {
    throw std::invalid_argument("walk must end at its target level 2^order");
  }

  VisitTrace trace;
  trace.order = order;
  trace.visits.assign(static_cast<std::size_t>(target) + 1, {});
  for (std::int64_t t = 0; t <= walk.steps; ++t) {
    const double v = walk.values[static_cast<std::size_t>(t)];
    if (t > 0) {
      const double dstep = v - walk.values[static_cast<std::size_t>(t - 1)];
      if (dstep != 1.0 && dstep != -1.0) {
        throw std::invalid_argument("dyadic construction requires +-1 steps");
      }
    }
    if (v == static_cast<double>(target) && t != walk.steps) {
      throw std::invalid_argument("walk must stop at its first hit of 2^order");
    }
    if (v >= 0.0 && v <= static_cast<double>(target)) {
      trace.visits[static_cast<std::size_t>(v)].push_back(t);
    }
  }
  trace.hit = true;
  trace.tau = walk.steps;
  trace.steps = walk.steps;
  return trace;
}

DyadicConstruction dyadic_from_trace(const VisitTrace& trace) {
  if (!trace.hit) throw std::invalid_argument("censored trace has no construction");
  const int n = trace.order;
  const std::int64_t target = std::int64_t{1} << n;

  DyadicConstruction c;
  c.order = n;
  c.tau = trace.tau;
  c.intervals.assign(static_cast<std::size_t>(target) + 1, {});
  c.visit_counts.assign(static_cast<std::size_t>(target) + 1, 0);

  c.intervals[0] = {0, trace.visits[0].back()};
  c.visit_counts[0] = static_cast<std::int64_t>(trace.visits[0].size());
  c.intervals[static_cast<std::size_t>(target)] = {trace.tau, trace.tau};
  c.visit_counts[static_cast<std::size_t>(target)] = 1;

  for (int k = n - 1; k >= 0; --k) {
    const std::int64_t stride = std::int64_t{1} << (k + 1);
    const std::int64_t half = std::int64_t{1} << k;
    for (std::int64_t x = half; x < target; x += stride) {
      const auto& lower = c.intervals[static_cast<std::size_t>(x - half)];
      const auto& upper = c.intervals[static_cast<std::size_t>(x + half)];
      const auto& vis = trace.visits[static_cast<std::size_t>(x)];
      auto first = std::upper_bound(vis.begin(), vis.end(), lower.b);
      auto last = std::lower_bound(vis.begin(), vis.end(), upper.a);
      if (first == last) {
        throw std::invalid_argument("no visit to a value between its dyadic neighbours");
      }
      c.intervals[static_cast<std::size_t>(x)] = {*first, *(last - 1)};
      c.visit_counts[static_cast<std::size_t>(x)] = static_cast<std::int64_t>(last - first);
    }
  }

  std::int64_t prev_b = c.intervals[0].b;
  std::int64_t total = 0;
  for (std::int64_t x = 1; x < target; ++x) {
    const auto& iv = c.intervals[static_cast<std::size_t>(x)];
    if (iv.a <= prev_b) throw std::logic_error("dyadic intervals out of order");
    prev_b = iv.b;
    total += c.visit_counts[static_cast<std::size_t>(x)];
  }
  c.index_set.reserve(static_cast<std::size_t>(total));
  for (std::int64_t x = 1; x < target; ++x) {
    const auto& iv = c.intervals[static_cast<std::size_t>(x)];
    const auto& vis = trace.visits[static_cast<std::size_t>(x)];
    auto first = std::lower_bound(vis.begin(), vis.end(), iv.a);
    for (auto it = first; it != vis.end() && *it <= iv.b; ++it) c.index_set.push_back(*it);
  }
  return c;
}

DyadicConstruction dyadic_increasing_set(const Walk& walk, int order) {
  return dyadic_from_trace(extract_visit_trace(walk, order));
}

std::map<int, std::vector<std::int64_t>> excursion_visit_counts(const DyadicConstruction& c) {
  std::map<int, std::vector<std::int64_t>> by_level;
  const std::int64_t target = c.target_level();
  for (std::int64_t x = 1; x < target; ++x) {
    by_level[ord2(x)].push_back(c.visit_counts[static_cast<std::size_t>(x)]);
  }
  return by_level;
}

std::optional<int> lb_scale_choice(double target) {
  for (int m = 1; m <= 62; ++m) {
    const double scale = static_cast<double>(m) * std::ldexp(1.0, m);
    if (scale / 9.0 <= target && target < scale / 4.0) return m;
  }
  return std::nullopt;
}

LbCheck theorem_lb_check(std::int64_t n, double epsilon, std::int64_t trials, std::uint64_t seed,
                         int threads) {
  if (n < 1) throw std::invalid_argument("horizon must be >= 1");
  if (trials < 1) throw std::invalid_argument("need at least one trial");
  if (epsilon < 0) throw std::invalid_argument("epsilon must be >= 0");

  LbCheck out;
  out.n = n;
  out.epsilon = epsilon;
  out.trials = trials;
  out.target = epsilon * std::sqrt(static_cast<double>(n)) * std::log2(static_cast<double>(n));
  out.scale_m = lb_scale_choice(out.target);

  const StepLaw law{LawKind::simple, 1, 1};
  struct Partial {
    std::int64_t failures = 0;
    std::int64_t lis_sum = 0;
  };
  auto partials = map_blocks<Partial>(trials, 64, threads, [&](std::int64_t trial, Partial& p) {
    const Walk w = generate_walk(law, n - 1, derive_seed(seed, {static_cast<std::uint64_t>(trial)}));
    const std::int64_t lis = lnds_length_1d(w.values);
    if (static_cast<double>(lis) < out.target) ++p.failures;
    p.lis_sum += lis;
  });
  std::int64_t failures = 0, lis_sum = 0;
  for (const auto& p : partials) {
    failures += p.failures;
    lis_sum += p.lis_sum;
  }
  out.failure_rate = static_cast<double>(failures) / static_cast<double>(trials);
  out.mean_lis = static_cast<double>(lis_sum) / static_cast<double>(trials);
  return out;
}

}  // namespace walklis
