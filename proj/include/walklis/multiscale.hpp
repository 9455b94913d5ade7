#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "walklis/step_law.hpp"
#include "walklis/walk.hpp"

namespace walklis {

// One scaled-local-time query: inside time block [p*4^m, (p+1)*4^m), count
// the order-(m-k) time sub-blocks that visit the value block
// [q*2^(m-k), (q+1)*2^(m-k)).
struct GridQuery {
  int m = 0;
  int k = 0;
  std::int64_t p = 0;
  std::int64_t q = 0;
};

std::int64_t scaled_local_time(std::span<const double> values, const GridQuery& query);
std::int64_t scaled_local_time(const Walk& walk, const GridQuery& query);

struct LocalTimeEvent {
  bool holds = true;
  std::optional<GridQuery> first_violation;  // first query exceeding gamma*n*2^k
  std::int64_t violation_count = 0;          // the count at that query
  double max_ratio = 0.0;                    // max over grid of count / (n*2^k)
};

// Checks count <= gamma*n*2^k over all k <= m <= order, p < 4^(order-m),
// and every visited value block q. Needs values for times [0, 4^order).
LocalTimeEvent local_time_event(std::span<const double> values, int order, double gamma);
LocalTimeEvent local_time_event(const Walk& walk, int order, double gamma);

// Smallest gamma making the event hold on this walk (the grid maximum of
// count / (n*2^k)); may be below the gamma >= 2 floor callers apply.
double min_gamma_for_event(std::span<const double> values, int order);

struct CertificateReport {
  int m = 0;
  int k = 0;
  double gamma = 0.0;
  bool assumption_local_time = false;
  bool assumption_max = false;
  mpq_class bound;  // (gamma * mk * 2^(k+1))^(m+1), exact
  std::optional<std::int64_t> lis_observed;

  bool assumptions_hold() const { return assumption_local_time && assumption_max; }
  bool lis_within_bound() const;
  std::string bound_decimal() const;
  std::string to_json() const;
};

// Evaluates both certificate assumptions on the walk restricted to
// [0, 4^(mk)] and fills the bound; optionally computes the exact LIS of
// S|[0,4^(mk)). Requires steps >= 4^(mk) and gamma >= 2.
CertificateReport certified_upper_bound(const Walk& walk, int m, int k, double gamma,
                                        bool compute_lis);

// floor(2^(n + 4*sqrt(n*log2(n)))) as an exact integer.
mpz_class theorem_ub_threshold(int n);

struct SubmultProbe {
  std::int64_t trials = 0;
  std::int64_t threshold = 0;  // N
  int ell = 1;
  double p_ell_n = 0.0;  // empirical P(LIS >= ell*N)
  double p_n = 0.0;      // empirical P(LIS >= N)
  double stderr_p_ell_n = 0.0;
  double stderr_p_n = 0.0;
};

// Estimates P(LIS >= ell*N) and P(LIS >= N) on the same sample of
// independent walks over [0, 4^order). Rejects trials < 100.
SubmultProbe submultiplicativity_probe(const StepLaw& law, int order, std::int64_t threshold_n,
                                       int ell, std::int64_t trials, std::uint64_t seed,
                                       int threads = 1);

}  // namespace walklis
