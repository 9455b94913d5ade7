#include "walklis/greedy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "walklis/lis.hpp"
#include "walklis/parallel.hpp"

namespace walklis {

namespace {

inline bool in_nonneg_orthant(const double* delta_from, const double* to, int d) {
  for (int c = 0; c < d; ++c) {
    if (to[c] < delta_from[c]) return false;
  }
  return true;
}

}  // namespace

GreedyChainResult greedy_chain(const Walk& walk, std::int64_t horizon) {
  if (horizon > walk.points()) {
    throw std::invalid_argument("horizon exceeds the walk length");
  }
  GreedyChainResult res;
  if (horizon <= 0) return res;
  const int d = walk.dim();
  res.chain.push_back(0);
  const double* ref = walk.point(0).data();
  for (std::int64_t t = 1; t < horizon; ++t) {
    const double* cur = walk.point(t).data();
    if (in_nonneg_orthant(ref, cur, d)) {
      res.increments.push_back(t - res.chain.back());
      res.chain.push_back(t);
      ref = cur;
    }
  }
  res.truncated_at_horizon = horizon < walk.points();
  return res;
}

std::int64_t greedy_chain_length(StepSampler& sampler, std::int64_t horizon) {
  if (horizon <= 0) return 0;
  const int d = sampler.law().dimension;
  std::vector<double> pos(static_cast<std::size_t>(d), 0.0);
  std::vector<double> ref(static_cast<std::size_t>(d), 0.0);
  std::vector<double> step(static_cast<std::size_t>(d), 0.0);
  std::int64_t length = 1;  // a_0 = 0
  for (std::int64_t t = 1; t < horizon; ++t) {
    sampler.next_step(step.data());
    for (int c = 0; c < d; ++c) pos[static_cast<std::size_t>(c)] += step[static_cast<std::size_t>(c)];
    if (in_nonneg_orthant(ref.data(), pos.data(), d)) {
      ++length;
      ref = pos;
    }
  }
  return length;
}

std::vector<TauSample> orthant_exit_samples(const StepLaw& law, std::int64_t trials,
                                            std::int64_t cap, std::uint64_t seed, int threads) {
  if (trials < 1) throw std::invalid_argument("need at least one trial");
  if (cap < 1) throw std::invalid_argument("cap must be >= 1");
  std::vector<TauSample> samples(static_cast<std::size_t>(trials));
  struct Nothing {};
  map_blocks<Nothing>(trials, 1024, threads, [&](std::int64_t trial, Nothing&) {
    StepSampler sampler(law, Rng::keyed(seed, {static_cast<std::uint64_t>(trial)}));
    const int d = law.dimension;
    double pos[16];
    double step[16];
    if (d > 16) throw std::invalid_argument("dimension too large");
    for (int c = 0; c < d; ++c) pos[c] = 0.0;
    TauSample out{cap, true};
    for (std::int64_t t = 1; t <= cap; ++t) {
      sampler.next_step(step);
      bool inside = true;
      for (int c = 0; c < d; ++c) {
        pos[c] += step[c];
        inside = inside && pos[c] >= 0.0;
      }
      if (inside) {
        out = {t, false};
        break;
      }
    }
    samples[static_cast<std::size_t>(trial)] = out;
  });
  return samples;
}

std::vector<double> survival_curve(std::span<const TauSample> samples,
                                   std::span<const std::int64_t> times) {
  std::vector<double> out(times.size(), 0.0);
  if (samples.empty()) return out;
  for (const auto& s : samples) {
    for (std::size_t i = 0; i < times.size(); ++i) {
      if (s.censored || s.tau > times[i]) out[i] += 1.0;
    }
  }
  for (auto& v : out) v /= static_cast<double>(samples.size());
  return out;
}

ChainTailTable chain_length_tail(const StepLaw& law, std::int64_t n,
                                 std::span<const double> epsilon_grid, std::int64_t trials,
                                 std::uint64_t seed, int threads, bool use_exact_lis) {
  if (n < 1) throw std::invalid_argument("horizon must be >= 1");
  if (trials < 1) throw std::invalid_argument("need at least one trial");
  if (use_exact_lis && n > 20000) {
    throw std::invalid_argument("exact d-dim LIS limited to n <= 20000");
  }

  std::vector<std::int64_t> lengths(static_cast<std::size_t>(trials), 0);
  struct Nothing {};
  map_blocks<Nothing>(trials, 16, threads, [&](std::int64_t trial, Nothing&) {
    const std::uint64_t trial_seed = derive_seed(seed, {static_cast<std::uint64_t>(trial)});
    if (use_exact_lis) {
      const Walk w = generate_walk(law, n - 1, trial_seed);
      lengths[static_cast<std::size_t>(trial)] =
          lnds_length_dd(PointSeq{w.values, law.dimension});
    } else {
      StepSampler sampler(law, Rng(trial_seed));
      lengths[static_cast<std::size_t>(trial)] = greedy_chain_length(sampler, n);
    }
  });

  ChainTailTable table;
  table.n = n;
  table.trials = trials;
  table.used_exact_lis = use_exact_lis;
  const double n_cbrt = std::cbrt(static_cast<double>(n));
  for (double eps : epsilon_grid) {
    ChainTailRow row;
    row.epsilon = eps;
    row.threshold = eps * n_cbrt;
    std::int64_t below = 0;
    for (auto len : lengths) {
      if (static_cast<double>(len) < row.threshold) ++below;
    }
    row.p_below = static_cast<double>(below) / static_cast<double>(trials);
    table.rows.push_back(row);
    if (eps > 0.0) table.c_hat = std::max(table.c_hat, row.p_below / eps);
  }
  return table;
}

}  // namespace walklis
