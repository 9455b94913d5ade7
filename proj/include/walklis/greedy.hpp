#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "walklis/walk.hpp"

namespace walklis {

// The chain produced by a_0 = 0, a_{i+1} = min{a > a_i : S(a) - S(a_i) in
// the closed non-negative orthant}, stopped below the horizon.
struct GreedyChainResult {
  std::vector<std::int64_t> chain;
  std::vector<std::int64_t> increments;
  bool truncated_at_horizon = false;  // the last search ran out of horizon
};

GreedyChainResult greedy_chain(const Walk& walk, std::int64_t horizon);

// Chain size only, streaming steps straight from the sampler.
std::int64_t greedy_chain_length(StepSampler& sampler, std::int64_t horizon);

struct TauSample {
  std::int64_t tau = 0;
  bool censored = false;
};

// i.i.d. samples of the first index t > 0 with S(t) in the closed
// non-negative orthant, censored at cap.
std::vector<TauSample> orthant_exit_samples(const StepLaw& law, std::int64_t trials,
                                            std::int64_t cap, std::uint64_t seed, int threads = 1);

// P(tau > t) for each requested t; censored samples count as tau > cap,
// so the curve is unbiased for t <= cap.
std::vector<double> survival_curve(std::span<const TauSample> samples,
                                   std::span<const std::int64_t> times);

struct ChainTailRow {
  double epsilon = 0.0;
  double threshold = 0.0;  // epsilon * n^(1/3)
  double p_below = 0.0;    // empirical P(chain length < threshold)
};

struct ChainTailTable {
  std::int64_t n = 0;
  std::int64_t trials = 0;
  bool used_exact_lis = false;
  std::vector<ChainTailRow> rows;
  double c_hat = 0.0;  // smallest c with p_below <= c * epsilon across rows
};

// Tail table for P(LIS < eps * n^(1/3)) with the greedy chain standing in
// for the LIS lower bound; exact d-dim LIS optional at small n.
ChainTailTable chain_length_tail(const StepLaw& law, std::int64_t n,
                                 std::span<const double> epsilon_grid, std::int64_t trials,
                                 std::uint64_t seed, int threads = 1, bool use_exact_lis = false);

}  // namespace walklis
