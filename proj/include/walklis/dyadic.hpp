#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "walklis/walk.hpp"

namespace walklis {

inline constexpr int kOrd2Infinity = std::numeric_limits<int>::max();

// 2-adic valuation; ord2(0) is the infinity sentinel.
int ord2(std::int64_t x);

// Visit times of each integer value in [0, 2^order], recorded up to and
// including the first hit of 2^order.
struct VisitTrace {
  int order = 0;
  std::vector<std::vector<std::int64_t>> visits;  // indexed by value x
  std::int64_t tau = -1;
  bool hit = false;
  std::int64_t steps = 0;  // steps consumed (tau when hit, cap when censored)
};

// Streams +-1 steps from the sampler, never materializing the walk; the
// sampler must be a 1-d simple law. Censors at cap.
VisitTrace record_visits_until_hit(StepSampler& sampler, int order, std::int64_t cap);

// Validates that the walk is a 1-d simple walk stopped at its first hit of
// 2^order and extracts its visit times.
VisitTrace extract_visit_trace(const Walk& walk, int order);

// Per-value time intervals I_x and the collected increasing index set:
// I_0 = [0, last visit to 0], I_{2^n} = {tau}; then by decreasing 2-order,
// a_x = first visit to x after b_{x-2^k} and b_x = last visit before
// a_{x+2^k}. A gathers every visit to interior x inside I_x.
struct DyadicConstruction {
  int order = 0;
  struct Interval {
    std::int64_t a = -1;
    std::int64_t b = -1;
  };
  std::vector<Interval> intervals;         // x in [0, 2^order]
  std::vector<std::int64_t> visit_counts;  // visits to x inside I_x
  std::vector<std::int64_t> index_set;     // A, strictly increasing
  std::int64_t tau = 0;

  std::int64_t target_level() const { return std::int64_t{1} << order; }
};

DyadicConstruction dyadic_from_trace(const VisitTrace& trace);
DyadicConstruction dyadic_increasing_set(const Walk& walk, int order);

// Visit counts pooled by the 2-order of the value: level k maps to the
// counts at interior x with ord2(x) == k, in increasing x order.
std::map<int, std::vector<std::int64_t>> excursion_visit_counts(const DyadicConstruction& c);

// Smallest m with m*2^m/9 <= target < m*2^m/4, if any.
std::optional<int> lb_scale_choice(double target);

struct LbCheck {
  std::int64_t n = 0;
  double epsilon = 0.0;
  std::int64_t trials = 0;
  double target = 0.0;        // epsilon * sqrt(n) * log2(n)
  double failure_rate = 0.0;  // fraction of trials with exact LIS < target
  double mean_lis = 0.0;
  std::optional<int> scale_m;
};

// Exact-LIS tail check for simple walks on [0, n).
LbCheck theorem_lb_check(std::int64_t n, double epsilon, std::int64_t trials, std::uint64_t seed,
                         int threads = 1);

}  // namespace walklis
