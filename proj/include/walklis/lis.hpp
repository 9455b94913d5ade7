#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace walklis {

// A time-ordered list of d-dimensional points, stored row-major.
struct PointSeq {
  std::span<const double> data;
  int dim = 1;

  std::int64_t size() const { return static_cast<std::int64_t>(data.size()) / dim; }
  const double* point(std::int64_t i) const { return data.data() + i * dim; }
};

// Longest non-decreasing subsequence length; patience-style tails array
// with weak placement, O(n log n).
std::int64_t lnds_length_1d(std::span<const double> seq);

// A witness chain of maximal length (indices, strictly increasing).
std::vector<std::int64_t> lnds_chain_1d(std::span<const double> seq);

// Longest strictly increasing subsequence length.
std::int64_t lis_strict_1d(std::span<const double> seq);

// Longest non-increasing subsequence length.
std::int64_t lnis_length_1d(std::span<const double> seq);

// Longest chain under (time strictly increasing, value componentwise
// non-decreasing); O(n^2 d) dynamic program. Agrees with lnds_length_1d
// when dim == 1.
std::int64_t lnds_length_dd(const PointSeq& points);

// Exhaustive maximum over all index subsets; test oracle, n <= 24 enforced.
std::int64_t lis_bruteforce(const PointSeq& points);

// Sum of absolute consecutive differences of seq along the sorted index
// set; 0 when |indices| <= 1. Rejects unsorted or out-of-range indices.
double variation(std::span<const double> seq, std::span<const std::int64_t> indices);

// All t whose value is >= every earlier value (weak records; includes 0).
std::vector<std::int64_t> record_times(std::span<const double> seq);

// Indices of the most frequent value; ties broken toward the smallest value.
std::vector<std::int64_t> longest_level_set(std::span<const double> seq);

// True when indices are strictly increasing, in range, and the points are
// componentwise non-decreasing along them.
bool is_increasing_chain(const PointSeq& points, std::span<const std::int64_t> indices);

}  // namespace walklis
