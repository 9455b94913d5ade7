#include "walklis/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace walklis {

Aggregate::Aggregate(std::size_t reservoir_capacity)
    : min_(std::numeric_limits<std::int64_t>::max()),
      max_(std::numeric_limits<std::int64_t>::min()),
      capacity_(reservoir_capacity) {
  if (capacity_ == 0) throw std::invalid_argument("reservoir capacity must be >= 1");
}

void Aggregate::add(std::int64_t value, std::uint64_t priority) {
  ++count_;
  sum_ += value;
  sum_sq_ += static_cast<__int128>(value) * value;
  min_ = std::min(min_, value);
  max_ = std::max(max_, value);
  reservoir_.emplace_back(priority, value);
  if (reservoir_.size() > 2 * capacity_) shrink();
}

void Aggregate::merge(const Aggregate& other) {
  if (other.capacity_ != capacity_) throw std::invalid_argument("reservoir capacities differ");
  count_ += other.count_;
  sum_ += other.sum_;
  sum_sq_ += other.sum_sq_;
  min_ = std::min(min_, other.min_);
  max_ = std::max(max_, other.max_);
  reservoir_.insert(reservoir_.end(), other.reservoir_.begin(), other.reservoir_.end());
  shrink();
}

void Aggregate::shrink() {
  std::sort(reservoir_.begin(), reservoir_.end());
  if (reservoir_.size() > capacity_) reservoir_.resize(capacity_);
}

double Aggregate::mean() const {
  if (count_ == 0) return 0.0;
  return static_cast<double>(sum_) / static_cast<double>(count_);
}

double Aggregate::variance() const {
  if (count_ < 2) return 0.0;
  // exact integer numerator: n * sum_sq - sum^2
  const __int128 num =
      static_cast<__int128>(count_) * sum_sq_ - static_cast<__int128>(sum_) * sum_;
  const double denom = static_cast<double>(count_) * static_cast<double>(count_ - 1);
  return static_cast<double>(num) / denom;
}

double Aggregate::stderr_mean() const {
  if (count_ == 0) return 0.0;
  return std::sqrt(variance() / static_cast<double>(count_));
}

double Aggregate::quantile(double q) const {
  if (reservoir_.empty()) return 0.0;
  if (q < 0.0 || q > 1.0) throw std::invalid_argument("quantile level must be in [0, 1]");
  std::vector<std::int64_t> values;
  values.reserve(std::min(reservoir_.size(), capacity_));
  auto sorted = reservoir_;
  std::sort(sorted.begin(), sorted.end());
  if (sorted.size() > capacity_) sorted.resize(capacity_);
  for (const auto& [prio, v] : sorted) values.push_back(v);
  std::sort(values.begin(), values.end());
  const auto m = static_cast<double>(values.size());
  auto rank = static_cast<std::int64_t>(std::ceil(q * m)) - 1;
  rank = std::clamp<std::int64_t>(rank, 0, static_cast<std::int64_t>(values.size()) - 1);
  return static_cast<double>(values[static_cast<std::size_t>(rank)]);
}

}  // namespace walklis
