#pragma once

#include <cstdint>
#include <vector>

namespace walklis {

// Order-independent summary of integer samples. Sums are exact integers
// and the quantile reservoir keeps the samples with the k smallest hash
// priorities, so merging partials in any grouping reproduces the aggregate
// of the concatenation bit for bit.
class Aggregate {
 public:
  explicit Aggregate(std::size_t reservoir_capacity = 4096);

  void add(std::int64_t value, std::uint64_t priority);
  void merge(const Aggregate& other);

  std::int64_t count() const { return count_; }
  std::int64_t min() const { return min_; }
  std::int64_t max() const { return max_; }
  double mean() const;
  double variance() const;       // unbiased sample variance
  double stderr_mean() const;
  double quantile(double q) const;  // nearest-rank over the reservoir

  std::int64_t sum() const { return sum_; }
  const std::vector<std::pair<std::uint64_t, std::int64_t>>& reservoir() const {
    return reservoir_;
  }
  std::size_t reservoir_capacity() const { return capacity_; }

 private:
  void shrink();

  std::int64_t count_ = 0;
  std::int64_t sum_ = 0;
  __int128 sum_sq_ = 0;
  std::int64_t min_ = 0;
  std::int64_t max_ = 0;
  std::size_t capacity_;
  std::vector<std::pair<std::uint64_t, std::int64_t>> reservoir_;  // (priority, value)
};

}  // namespace walklis
