#include "walklis/multiscale.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "json.hpp"

#include "walklis/bigint.hpp"
#include "walklis/lis.hpp"
#include "walklis/parallel.hpp"

namespace walklis {

namespace {

using json = nlohmann::json;

void validate_query(std::span<const double> values, const GridQuery& q) {
  if (q.m < 0 || q.k < 0 || q.k > q.m) {
    throw std::invalid_argument("grid query needs 0 <= k <= m");
  }
  if (q.p < 0) throw std::invalid_argument("grid query needs p >= 0");
  if (q.m > 30) throw std::invalid_argument("grid order too large");
  const std::int64_t needed = (q.p + 1) << (2 * q.m);
  if (static_cast<std::int64_t>(values.size()) < needed) {
    throw std::invalid_argument("walk too short to cover the queried time block");
  }
}

inline std::int64_t value_block(double v, int order) {
  return static_cast<std::int64_t>(std::floor(std::ldexp(v, -order)));
}

// Full grid scan; gamma may be +infinity (pure max-ratio computation).
LocalTimeEvent scan_grid(std::span<const double> values, int order, double gamma) {
  if (order < 1 || order > 30) throw std::invalid_argument("event order must be in [1, 30]");
  const std::int64_t total = std::int64_t{1} << (2 * order);
  if (static_cast<std::int64_t>(values.size()) < total) {
    throw std::invalid_argument("walk too short: event needs values on [0, 4^order)");
  }

  LocalTimeEvent ev;
  std::vector<std::int64_t> block_qs;   // visited blocks, one entry per (sub-interval, q)
  std::vector<std::int64_t> sub_qs;     // distinct blocks within one sub-interval
  for (int m = 0; m <= order; ++m) {
    for (int k = 0; k <= m; ++k) {
      const double denom = static_cast<double>(order) * std::ldexp(1.0, k);
      const double threshold = gamma * denom;
      const int vorder = m - k;
      const std::int64_t sub = std::int64_t{1} << (2 * vorder);
      const std::int64_t subs_per_block = std::int64_t{1} << (2 * k);
      const std::int64_t pblocks = std::int64_t{1} << (2 * (order - m));
      for (std::int64_t p = 0; p < pblocks; ++p) {
        block_qs.clear();
        const std::int64_t base = p << (2 * m);
        for (std::int64_t s = 0; s < subs_per_block; ++s) {
          sub_qs.clear();
          std::int64_t last = std::numeric_limits<std::int64_t>::min();
          const std::int64_t t0 = base + s * sub;
          for (std::int64_t t = t0; t < t0 + sub; ++t) {
            const std::int64_t qv = value_block(values[t], vorder);
            if (qv != last) {
              sub_qs.push_back(qv);
              last = qv;
            }
          }
          std::sort(sub_qs.begin(), sub_qs.end());
          sub_qs.erase(std::unique(sub_qs.begin(), sub_qs.end()), sub_qs.end());
          block_qs.insert(block_qs.end(), sub_qs.begin(), sub_qs.end());
        }
        std::sort(block_qs.begin(), block_qs.end());
        for (std::size_t i = 0; i < block_qs.size();) {
          std::size_t j = i;
          while (j < block_qs.size() && block_qs[j] == block_qs[i]) ++j;
          const auto count = static_cast<std::int64_t>(j - i);
          const double ratio = static_cast<double>(count) / denom;
          if (ratio > ev.max_ratio) ev.max_ratio = ratio;
          if (ev.holds && static_cast<double>(count) > threshold) {
            ev.holds = false;
            ev.first_violation = GridQuery{m, k, p, block_qs[i]};
            ev.violation_count = count;
          }
          i = j;
        }
      }
    }
  }
  return ev;
}

mpq_class pow_rational(const mpq_class& base, unsigned long exp) {
  mpq_class r;
  mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(base.get_mpq_t()), exp);
  mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(base.get_mpq_t()), exp);
  r.canonicalize();
  return r;
}

}  // namespace

std::int64_t scaled_local_time(std::span<const double> values, const GridQuery& query) {
  validate_query(values, query);
  const int vorder = query.m - query.k;
  const std::int64_t sub = std::int64_t{1} << (2 * vorder);
  const std::int64_t base = query.p << (2 * query.m);
  std::int64_t count = 0;
  for (std::int64_t s = 0; s < (std::int64_t{1} << (2 * query.k)); ++s) {
    const std::int64_t t0 = base + s * sub;
    for (std::int64_t t = t0; t < t0 + sub; ++t) {
      if (value_block(values[t], vorder) == query.q) {
        ++count;
        break;
      }
    }
  }
  return count;
}

std::int64_t scaled_local_time(const Walk& walk, const GridQuery& query) {
  if (walk.dim() != 1) throw std::invalid_argument("scaled local time requires a 1-d walk");
  return scaled_local_time(std::span<const double>(walk.values), query);
}

LocalTimeEvent local_time_event(std::span<const double> values, int order, double gamma) {
  if (gamma < 2.0) throw std::invalid_argument("gamma must be >= 2");
  return scan_grid(values, order, gamma);
}

LocalTimeEvent local_time_event(const Walk& walk, int order, double gamma) {
  if (walk.dim() != 1) throw std::invalid_argument("local-time event requires a 1-d walk");
  return local_time_event(std::span<const double>(walk.values), order, gamma);
}

double min_gamma_for_event(std::span<const double> values, int order) {
  return scan_grid(values, order, std::numeric_limits<double>::infinity()).max_ratio;
}

bool CertificateReport::lis_within_bound() const {
  if (!lis_observed.has_value()) return true;
  return mpq_class(static_cast<long>(*lis_observed)) <= bound;
}

std::string CertificateReport::bound_decimal() const { return decimal_string(bound); }

std::string CertificateReport::to_json() const {
  json j;
  j["m"] = m;
  j["k"] = k;
  j["gamma"] = gamma;
  j["assumption_local_time"] = assumption_local_time;
  j["assumption_max"] = assumption_max;
  j["bound"] = bound_decimal();
  if (lis_observed.has_value()) {
    j["lis_observed"] = *lis_observed;
  } else {
    j["lis_observed"] = nullptr;
  }
  return j.dump();
}

CertificateReport certified_upper_bound(const Walk& walk, int m, int k, double gamma,
                                        bool compute_lis) {
  if (walk.dim() != 1) throw std::invalid_argument("certificate requires a 1-d walk");
  if (m < 1 || k < 1) throw std::invalid_argument("certificate needs m >= 1 and k >= 1");
  if (gamma < 2.0) throw std::invalid_argument("gamma must be >= 2");
  const int n = m * k;
  if (n > 15) throw std::invalid_argument("certificate order m*k too large to evaluate");
  const std::int64_t horizon = std::int64_t{1} << (2 * n);
  if (walk.steps < horizon) {
    throw std::invalid_argument("walk too short: certificate needs at least 4^(m*k) steps");
  }

  CertificateReport rep;
  rep.m = m;
  rep.k = k;
  rep.gamma = gamma;

  const std::span<const double> prefix(walk.values.data(), static_cast<std::size_t>(horizon));
  rep.assumption_local_time = local_time_event(prefix, n, gamma).holds;

  double max_abs = 0.0;
  for (std::int64_t t = 0; t <= horizon; ++t) {
    max_abs = std::max(max_abs, std::abs(walk.values[t]));
  }
  rep.assumption_max = max_abs <= static_cast<double>(n) * std::ldexp(1.0, n);

  mpq_class base = rational_from_double(gamma);
  base *= n;
  mpz_class two_pow;
  mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, static_cast<unsigned long>(k) + 1);
  base *= mpq_class(two_pow);
  rep.bound = pow_rational(base, static_cast<unsigned long>(m) + 1);

  if (compute_lis) rep.lis_observed = lnds_length_1d(prefix);
  return rep;
}

mpz_class theorem_ub_threshold(int n) {
  if (n < 1) throw std::invalid_argument("threshold order must be >= 1");
  if (n > (1 << 16)) throw std::invalid_argument("threshold order too large");
  const double approx = n + 4.0 * std::sqrt(static_cast<double>(n) * std::log2(std::max(1.0, static_cast<double>(n))));
  const auto prec = static_cast<mpfr_prec_t>(approx) + 128;

  mpfr_t lg, s, x;
  mpfr_init2(lg, prec);
  mpfr_init2(s, prec);
  mpfr_init2(x, prec);
  mpfr_set_ui(lg, static_cast<unsigned long>(n), MPFR_RNDN);
  mpfr_log2(lg, lg, MPFR_RNDN);
  mpfr_mul_ui(lg, lg, static_cast<unsigned long>(n), MPFR_RNDN);
  mpfr_sqrt(s, lg, MPFR_RNDN);
  mpfr_mul_ui(s, s, 4, MPFR_RNDN);
  mpfr_add_ui(x, s, static_cast<unsigned long>(n), MPFR_RNDN);
  mpfr_exp2(x, x, MPFR_RNDN);

  mpz_class out;
  mpfr_get_z(out.get_mpz_t(), x, MPFR_RNDD);
  mpfr_clear(lg);
  mpfr_clear(s);
  mpfr_clear(x);
  return out;
}

SubmultProbe submultiplicativity_probe(const StepLaw& law, int order, std::int64_t threshold_n,
                                       int ell, std::int64_t trials, std::uint64_t seed,
                                       int threads) {
  if (trials < 100) throw std::invalid_argument("submultiplicativity probe needs >= 100 trials");
  if (law.dimension != 1) throw std::invalid_argument("submultiplicativity probe is 1-d");
  if (order < 1 || order > 15) throw std::invalid_argument("order out of range");
  if (threshold_n < 1 || ell < 1) throw std::invalid_argument("need N >= 1 and ell >= 1");

  const std::int64_t points = std::int64_t{1} << (2 * order);
  struct Partial {
    std::int64_t hits_ell = 0;
    std::int64_t hits_one = 0;
  };
  auto partials = map_blocks<Partial>(trials, 256, threads, [&](std::int64_t trial, Partial& p) {
    const Walk w = generate_walk(law, points - 1, derive_seed(seed, {static_cast<std::uint64_t>(trial)}));
    const std::int64_t lis = lnds_length_1d(w.values);
    if (lis >= threshold_n) ++p.hits_one;
    if (lis >= static_cast<std::int64_t>(ell) * threshold_n) ++p.hits_ell;
  });

  std::int64_t hits_ell = 0, hits_one = 0;
  for (const auto& p : partials) {
    hits_ell += p.hits_ell;
    hits_one += p.hits_one;
  }

  SubmultProbe out;
  out.trials = trials;
  out.threshold = threshold_n;
  out.ell = ell;
  out.p_ell_n = static_cast<double>(hits_ell) / static_cast<double>(trials);
  out.p_n = static_cast<double>(hits_one) / static_cast<double>(trials);
  const auto binom_se = [&](double p) {
    return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(trials));
  };
  out.stderr_p_ell_n = binom_se(out.p_ell_n);
  out.stderr_p_n = binom_se(out.p_n);
  return out;
}

}  // namespace walklis
