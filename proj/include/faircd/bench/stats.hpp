#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

namespace faircd::bench {

// Mean and population standard deviation of the values added so far.
class Summary {
 public:
  void add(double v) { values_.push_back(v); }
  std::size_t count() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  std::optional<double> mean() const {
    if (values_.empty()) return std::nullopt;
    // Shifted by the first value so that identical values give that value back exactly.
    const double base = values_.front();
    double s = 0;
    for (double v : values_) s += v - base;
    return base + s / static_cast<double>(values_.size());
  }
  std::optional<double> stddev() const {
    const auto mu = mean();
    if (!mu) return std::nullopt;
    double s = 0;
    for (double v : values_) s += (v - *mu) * (v - *mu);
    return std::sqrt(s / static_cast<double>(values_.size()));
  }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_;
};

}  // namespace faircd::bench
