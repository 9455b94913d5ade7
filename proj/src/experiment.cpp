#include "walklis/experiment.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "walklis/dyadic.hpp"
#include "walklis/greedy.hpp"
#include "walklis/lis.hpp"
#include "walklis/parallel.hpp"
#include "walklis/walk.hpp"

namespace walklis {

namespace {

constexpr std::uint64_t kPriorityTag = 0x7072696fULL;  // reservoir priorities

bool is_power_of_two(std::int64_t n) {
  return n > 0 && std::has_single_bit(static_cast<std::uint64_t>(n));
}

}  // namespace

std::string statistic_name(Statistic s) {
  switch (s) {
    case Statistic::exact_lis: return "exact-lis";
    case Statistic::record_count: return "record-count";
    case Statistic::level_set: return "level-set";
    case Statistic::dyadic_a: return "dyadic-A";
    case Statistic::greedy_chain: return "greedy-chain";
  }
  return "?";
}

Statistic parse_statistic(std::string_view name) {
  if (name == "exact-lis") return Statistic::exact_lis;
  if (name == "record-count") return Statistic::record_count;
  if (name == "level-set") return Statistic::level_set;
  if (name == "dyadic-A") return Statistic::dyadic_a;
  if (name == "greedy-chain") return Statistic::greedy_chain;
  throw std::invalid_argument("unknown statistic: " + std::string(name));
}

void ExperimentSpec::validate() const {
  if (sizes.empty()) throw std::invalid_argument("experiment needs at least one size");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 1) throw std::invalid_argument("sizes must be >= 1");
    if (i > 0 && sizes[i] <= sizes[i - 1]) {
      throw std::invalid_argument("sizes must be strictly increasing");
    }
  }
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (law.kind == LawKind::custom) throw std::invalid_argument("experiments need a generatable law");
  const bool one_dim = law.dimension == 1;
  switch (statistic) {
    case Statistic::exact_lis:
      if (!one_dim) {
        for (auto n : sizes) {
          if (n > 20000) {
            throw std::invalid_argument("exact d-dim LIS limited to sizes <= 20000");
          }
        }
      }
      break;
    case Statistic::record_count:
    case Statistic::level_set:
      if (!one_dim) throw std::invalid_argument(statistic_name(statistic) + " is 1-d only");
      break;
    case Statistic::dyadic_a:
      if (law.kind != LawKind::simple || !one_dim) {
        throw std::invalid_argument("dyadic-A requires the 1-d simple law");
      }
      for (auto n : sizes) {
        if (!is_power_of_two(n) || n < 2) {
          throw std::invalid_argument("dyadic-A sizes must be powers of two >= 2");
        }
      }
      if (stopped_cap < 1) throw std::invalid_argument("stopped-walk cap must be >= 1");
      break;
    case Statistic::greedy_chain:
      break;
  }
}

namespace {

// One sample of the statistic at size n; `resamples` counts censored
// stopped walks that were redrawn from the same trial stream.
std::int64_t sample_statistic(const ExperimentSpec& spec, std::int64_t n,
                              std::uint64_t trial_seed, std::int64_t& resamples) {
  switch (spec.statistic) {
    case Statistic::exact_lis: {
      const Walk w = generate_walk(spec.law, n - 1, trial_seed);
      if (spec.law.dimension == 1) return lnds_length_1d(w.values);
      return lnds_length_dd(PointSeq{w.values, spec.law.dimension});
    }
    case Statistic::record_count: {
      const Walk w = generate_walk(spec.law, n - 1, trial_seed);
      return static_cast<std::int64_t>(record_times(w.values).size());
    }
    case Statistic::level_set: {
      const Walk w = generate_walk(spec.law, n - 1, trial_seed);
      return static_cast<std::int64_t>(longest_level_set(w.values).size());
    }
    case Statistic::dyadic_a: {
      const int order = std::countr_zero(static_cast<std::uint64_t>(n));
      StepSampler sampler(spec.law, Rng::keyed(trial_seed, {}));
      for (;;) {
        const VisitTrace trace = record_visits_until_hit(sampler, order, spec.stopped_cap);
        if (trace.hit) {
          return static_cast<std::int64_t>(dyadic_from_trace(trace).index_set.size());
        }
        ++resamples;  // censored; keep drawing from the same stream
      }
    }
    case Statistic::greedy_chain: {
      StepSampler sampler(spec.law, Rng::keyed(trial_seed, {}));
      return greedy_chain_length(sampler, n);
    }
  }
  throw std::logic_error("unreachable statistic");
}

}  // namespace

ScalingTable run_scaling(const ExperimentSpec& spec) {
  spec.validate();
  ScalingTable table;
  table.spec = spec;
  for (const std::int64_t n : spec.sizes) {
    struct Partial {
      Aggregate agg{4096};
      std::int64_t resamples = 0;
      bool inited = false;
    };
    const std::size_t reservoir = spec.reservoir;
    auto partials = map_blocks<Partial>(
        spec.trials, 64, spec.threads, [&](std::int64_t trial, Partial& p) {
          if (!p.inited) {
            p.agg = Aggregate(reservoir);
            p.inited = true;
          }
          const auto un = static_cast<std::uint64_t>(n);
          const auto ut = static_cast<std::uint64_t>(trial);
          const std::uint64_t trial_seed = derive_seed(spec.master_seed, {un, ut});
          const std::uint64_t priority = derive_seed(spec.master_seed, {un, ut, kPriorityTag});
          std::int64_t resamples = 0;
          const std::int64_t value = sample_statistic(spec, n, trial_seed, resamples);
          p.agg.add(value, priority);
          p.resamples += resamples;
        });
    ScalingRow row;
    row.n = n;
    row.agg = Aggregate(reservoir);
    for (const auto& p : partials) {
      if (!p.inited) continue;
      row.agg.merge(p.agg);
      row.resamples += p.resamples;
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

ExponentFit fit_table(const ScalingTable& table, double window_lo, double window_hi) {
  std::vector<std::int64_t> ns;
  std::vector<double> means;
  for (const auto& row : table.rows) {
    ns.push_back(row.n);
    means.push_back(row.agg.mean());
  }
  return fit_exponent(ns, means, window_lo, window_hi);
}

PetrovProbe petrov_probe(const StepLaw& law, std::int64_t n, double lambda, std::int64_t trials,
                         std::span<const double> x_grid, std::uint64_t seed, int threads) {
  if (law.dimension != 1) throw std::invalid_argument("petrov probe is 1-d");
  if (n < 1 || trials < 1) throw std::invalid_argument("need n >= 1 and trials >= 1");
  if (lambda < 0) throw std::invalid_argument("lambda must be >= 0");
  if (x_grid.empty()) throw std::invalid_argument("x grid must be nonempty");

  struct Partial {
    std::vector<std::int64_t> hits;
  };
  auto partials = map_blocks<Partial>(trials, 256, threads, [&](std::int64_t trial, Partial& p) {
    if (p.hits.empty()) p.hits.assign(x_grid.size(), 0);
    StepSampler sampler(law, Rng::keyed(seed, {static_cast<std::uint64_t>(trial)}));
    double endpoint = 0.0;
    for (std::int64_t t = 0; t < n; ++t) endpoint += sampler.next_coord();
    for (std::size_t i = 0; i < x_grid.size(); ++i) {
      if (x_grid[i] <= endpoint && endpoint <= x_grid[i] + lambda) ++p.hits[i];
    }
  });

  std::vector<std::int64_t> hits(x_grid.size(), 0);
  for (const auto& p : partials) {
    for (std::size_t i = 0; i < p.hits.size(); ++i) hits[i] += p.hits[i];
  }

  PetrovProbe out;
  out.n = n;
  out.lambda = lambda;
  out.trials = trials;
  std::size_t best = 0;
  for (std::size_t i = 1; i < hits.size(); ++i) {
    if (hits[i] > hits[best]) best = i;
  }
  out.sup_p = static_cast<double>(hits[best]) / static_cast<double>(trials);
  out.sup_x = x_grid[best];
  out.c_hat = out.sup_p * std::sqrt(static_cast<double>(n)) / (lambda + 1.0);
  out.stderr_sup = std::sqrt(std::max(0.0, out.sup_p * (1.0 - out.sup_p)) /
                             static_cast<double>(trials));
  return out;
}

MaxConcentration max_concentration_probe(const StepLaw& law, std::int64_t n,
                                         std::span<const double> lambdas, std::int64_t trials,
                                         std::uint64_t seed, int threads) {
  if (law.dimension != 1) throw std::invalid_argument("max-concentration probe is 1-d");
  if (n < 1 || trials < 1) throw std::invalid_argument("need n >= 1 and trials >= 1");
  if (lambdas.empty()) throw std::invalid_argument("lambda grid must be nonempty");

  const double sqrt_n = std::sqrt(static_cast<double>(n));
  struct Partial {
    std::vector<std::int64_t> hits;
  };
  auto partials = map_blocks<Partial>(trials, 256, threads, [&](std::int64_t trial, Partial& p) {
    if (p.hits.empty()) p.hits.assign(lambdas.size(), 0);
    StepSampler sampler(law, Rng::keyed(seed, {static_cast<std::uint64_t>(trial)}));
    double pos = 0.0, max_abs = 0.0;
    for (std::int64_t t = 0; t < n; ++t) {
      pos += sampler.next_coord();
      max_abs = std::max(max_abs, std::abs(pos));
    }
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
      if (max_abs >= lambdas[i] * sqrt_n) ++p.hits[i];
    }
  });

  std::vector<std::int64_t> hits(lambdas.size(), 0);
  for (const auto& p : partials) {
    for (std::size_t i = 0; i < p.hits.size(); ++i) hits[i] += p.hits[i];
  }

  MaxConcentration out;
  out.n = n;
  out.trials = trials;
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    MaxTailRow row;
    row.lambda = lambdas[i];
    row.p_hat = static_cast<double>(hits[i]) / static_cast<double>(trials);
    row.stderr_p =
        std::sqrt(std::max(0.0, row.p_hat * (1.0 - row.p_hat)) / static_cast<double>(trials));
    row.chebyshev = lambdas[i] > 0 ? 1.0 / (lambdas[i] * lambdas[i]) : 1.0;
    out.rows.push_back(row);
    if (row.p_hat > 0.0) {
      xs.push_back(lambdas[i] * lambdas[i]);
      ys.push_back(-std::log(row.p_hat));
    }
  }
  if (xs.size() >= 2) {
    out.log_tail_fit = linear_fit(xs, ys);
    out.fit_valid = true;
  }
  return out;
}

}  // namespace walklis
