#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "walklis/aggregate.hpp"
#include "walklis/stats.hpp"
#include "walklis/step_law.hpp"

namespace walklis {

enum class Statistic {
  exact_lis,
  record_count,
  level_set,
  dyadic_a,
  greedy_chain,
};

std::string statistic_name(Statistic s);
Statistic parse_statistic(std::string_view name);

// One scaling study: `trials` samples of `statistic` at each size. Trial t
// of size n draws from the stream keyed (master_seed, n, t), so partial
// runs, merged runs and parallel runs all agree exactly. `threads` is an
// execution knob and is never echoed into reports.
struct ExperimentSpec {
  StepLaw law;
  Statistic statistic = Statistic::exact_lis;
  std::vector<std::int64_t> sizes;
  std::int64_t trials = 1;
  std::uint64_t master_seed = 0;
  std::int64_t stopped_cap = 10'000'000;  // dyadic-A censoring cap
  std::size_t reservoir = 4096;
  int threads = 1;

  void validate() const;
};

struct ScalingRow {
  std::int64_t n = 0;
  Aggregate agg;
  std::int64_t resamples = 0;  // censored stopped walks that were redrawn
};

struct ScalingTable {
  ExperimentSpec spec;
  std::vector<ScalingRow> rows;
};

ScalingTable run_scaling(const ExperimentSpec& spec);

// log-log fit of the per-size means over window_lo <= n <= window_hi.
ExponentFit fit_table(const ScalingTable& table, double window_lo, double window_hi);

struct PetrovProbe {
  std::int64_t n = 0;
  double lambda = 0.0;
  std::int64_t trials = 0;
  double sup_p = 0.0;   // max over the grid of P(x <= S(n) <= x+lambda)
  double sup_x = 0.0;   // grid point attaining it
  double c_hat = 0.0;   // sup_p * sqrt(n) / (lambda + 1)
  double stderr_sup = 0.0;
};

// Grid supremum of interval-hit frequencies of the endpoint S(n).
PetrovProbe petrov_probe(const StepLaw& law, std::int64_t n, double lambda, std::int64_t trials,
                         std::span<const double> x_grid, std::uint64_t seed, int threads = 1);

struct MaxTailRow {
  double lambda = 0.0;
  double p_hat = 0.0;      // P(max |S| >= lambda * sqrt(n))
  double stderr_p = 0.0;
  double chebyshev = 0.0;  // 1 / lambda^2
};

struct MaxConcentration {
  std::int64_t n = 0;
  std::int64_t trials = 0;
  std::vector<MaxTailRow> rows;
  bool fit_valid = false;
  LinearFit log_tail_fit;  // -ln(p_hat) against lambda^2, rows with p_hat > 0
};

MaxConcentration max_concentration_probe(const StepLaw& law, std::int64_t n,
                                         std::span<const double> lambdas, std::int64_t trials,
                                         std::uint64_t seed, int threads = 1);

}  // namespace walklis
