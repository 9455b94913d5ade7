#include "walklis/lis.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace walklis {

std::int64_t lnds_length_1d(std::span<const double> seq) {
  std::vector<double> tails;
  tails.reserve(256);
  for (double x : seq) {
    auto it = std::upper_bound(tails.begin(), tails.end(), x);
    if (it == tails.end()) {
      tails.push_back(x);
    } else {
      *it = x;
    }
  }
  return static_cast<std::int64_t>(tails.size());
}

std::vector<std::int64_t> lnds_chain_1d(std::span<const double> seq) {
  const std::int64_t n = static_cast<std::int64_t>(seq.size());
  std::vector<std::int64_t> tail_index;  // index holding the tail of each pile
  std::vector<std::int64_t> parent(n, -1);
  std::vector<double> tails;
  for (std::int64_t i = 0; i < n; ++i) {
    auto it = std::upper_bound(tails.begin(), tails.end(), seq[i]);
    const std::size_t pos = static_cast<std::size_t>(it - tails.begin());
    if (pos > 0) parent[i] = tail_index[pos - 1];
    if (it == tails.end()) {
      tails.push_back(seq[i]);
      tail_index.push_back(i);
    } else {
      *it = seq[i];
      tail_index[pos] = i;
    }
  }
  std::vector<std::int64_t> chain(tails.size());
  if (!chain.empty()) {
    std::int64_t i = tail_index.back();
    for (auto k = static_cast<std::int64_t>(chain.size()) - 1; k >= 0; --k) {
      chain[k] = i;
      i = parent[i];
    }
  }
  return chain;
}

std::int64_t lis_strict_1d(std::span<const double> seq) {
  std::vector<double> tails;
  tails.reserve(256);
  for (double x : seq) {
    auto it = std::lower_bound(tails.begin(), tails.end(), x);
    if (it == tails.end()) {
      tails.push_back(x);
    } else {
      *it = x;
    }
  }
  return static_cast<std::int64_t>(tails.size());
}

std::int64_t lnis_length_1d(std::span<const double> seq) {
  std::vector<double> negated(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) negated[i] = -seq[i];
  return lnds_length_1d(negated);
}

namespace {

inline bool dominates_weakly(const double* lo, const double* hi, int d) {
  for (int c = 0; c < d; ++c) {
    if (lo[c] > hi[c]) return false;
  }
  return true;
}

}  // namespace

std::int64_t lnds_length_dd(const PointSeq& points) {
  if (points.dim < 1) throw std::invalid_argument("dimension must be >= 1");
  const std::int64_t n = points.size();
  if (n == 0) return 0;
  if (points.dim == 1) return lnds_length_1d(points.data);
  std::vector<std::int32_t> dp(static_cast<std::size_t>(n), 1);
  std::int32_t best = 1;
  const int d = points.dim;
  for (std::int64_t i = 1; i < n; ++i) {
    const double* pi = points.point(i);
    std::int32_t bi = 1;
    for (std::int64_t j = 0; j < i; ++j) {
      if (dp[j] >= bi && dominates_weakly(points.point(j), pi, d)) bi = dp[j] + 1;
    }
    dp[i] = bi;
    best = std::max(best, bi);
  }
  return best;
}

std::int64_t lis_bruteforce(const PointSeq& points) {
  const std::int64_t n = points.size();
  if (n > 24) throw std::invalid_argument("brute-force oracle limited to n <= 24");
  if (n == 0) return 0;
  const int d = points.dim;
  std::int64_t best = 0;
  const std::uint32_t limit = 1u << n;
  for (std::uint32_t mask = 1; mask < limit; ++mask) {
    const int size = std::popcount(mask);
    if (size <= best) continue;
    std::uint32_t rest = mask;
    const double* prev = nullptr;
    bool ok = true;
    while (rest != 0) {
      const int i = std::countr_zero(rest);
      rest &= rest - 1;
      const double* cur = points.point(i);
      if (prev != nullptr && !dominates_weakly(prev, cur, d)) {
        ok = false;
        break;
      }
      prev = cur;
    }
    if (ok) best = size;
  }
  return best;
}

double variation(std::span<const double> seq, std::span<const std::int64_t> indices) {
  const auto n = static_cast<std::int64_t>(seq.size());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] < 0 || indices[i] >= n) throw std::out_of_range("variation: index out of range");
    if (i > 0 && indices[i] <= indices[i - 1]) {
      throw std::invalid_argument("variation: indices must be strictly increasing");
    }
  }
  double total = 0.0;
  for (std::size_t i = 1; i < indices.size(); ++i) {
    total += std::abs(seq[indices[i]] - seq[indices[i - 1]]);
  }
  return total;
}

std::vector<std::int64_t> record_times(std::span<const double> seq) {
  std::vector<std::int64_t> records;
  double best = 0.0;
  for (std::int64_t t = 0; t < static_cast<std::int64_t>(seq.size()); ++t) {
    if (t == 0 || seq[t] >= best) {
      records.push_back(t);
      best = seq[t];
    }
  }
  return records;
}

std::vector<std::int64_t> longest_level_set(std::span<const double> seq) {
  std::vector<std::pair<double, std::int64_t>> order(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) order[i] = {seq[i], static_cast<std::int64_t>(i)};
  std::sort(order.begin(), order.end());

  std::size_t best_begin = 0, best_len = 0;
  std::size_t run_begin = 0;
  for (std::size_t i = 0; i <= order.size(); ++i) {
    if (i == order.size() || order[i].first != order[run_begin].first) {
      // ties toward the smallest value: strict improvement only
      if (i - run_begin > best_len) {
        best_len = i - run_begin;
        best_begin = run_begin;
      }
      run_begin = i;
    }
  }
  std::vector<std::int64_t> indices;
  indices.reserve(best_len);
  for (std::size_t i = best_begin; i < best_begin + best_len; ++i) indices.push_back(order[i].second);
  std::sort(indices.begin(), indices.end());
  return indices;
}

bool is_increasing_chain(const PointSeq& points, std::span<const std::int64_t> indices) {
  const std::int64_t n = points.size();
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] < 0 || indices[i] >= n) return false;
    if (i > 0) {
      if (indices[i] <= indices[i - 1]) return false;
      if (!dominates_weakly(points.point(indices[i - 1]), points.point(indices[i]), points.dim)) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace walklis
