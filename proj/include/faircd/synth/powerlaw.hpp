#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "faircd/core/random.hpp"

namespace faircd {

// Discrete power law P(k) ∝ k^-exponent on the integers [lo, hi].
class DiscretePowerLaw {
 public:
  DiscretePowerLaw(std::int64_t lo, std::int64_t hi, double exponent) : lo_(lo), hi_(hi), exponent_(exponent) {
    if (lo < 1 || hi < lo) throw std::invalid_argument("DiscretePowerLaw: need 1 <= lo <= hi");
    cdf_.reserve(static_cast<std::size_t>(hi - lo + 1));
    double acc = 0, weighted = 0;
    for (auto k = lo; k <= hi; ++k) {
      const double p = std::pow(static_cast<double>(k), -exponent);
      acc += p;
      weighted += p * static_cast<double>(k);
      cdf_.push_back(acc);
    }
    mean_ = weighted / acc;
    for (auto& c : cdf_) c /= acc;
    cdf_.back() = 1.0;
  }

  std::int64_t sample(Rng& rng) const {
    const double u = rng.uniform();
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return lo_ + static_cast<std::int64_t>(it - cdf_.begin());
  }

  double mean() const { return mean_; }
  std::int64_t lo() const { return lo_; }
  std::int64_t hi() const { return hi_; }
  double exponent() const { return exponent_; }

 private:
  std::int64_t lo_, hi_;
  double exponent_;
  double mean_ = 0;
  std::vector<double> cdf_;
};

// Lower cutoff in [1, hi] whose truncated power law has mean closest to target.
inline std::int64_t lower_cutoff_for_mean(double target, std::int64_t hi, double exponent) {
  std::int64_t best = 1;
  double best_gap = INFINITY;
  for (std::int64_t lo = 1; lo <= hi; ++lo) {
    const double gap = std::abs(DiscretePowerLaw(lo, hi, exponent).mean() - target);
    if (gap < best_gap) {
      best_gap = gap;
      best = lo;
    }
  }
  return best;
}

struct PowerLawFit {
  double exponent = 0;
  double ks_distance = 0;  // sup |empirical CDF - fitted CDF|
  std::int64_t lo = 0, hi = 0;
};

// Maximum-likelihood exponent of a discrete power law truncated to the
// observed range [min, max], found by golden-section search.
inline PowerLawFit fit_truncated_power_law(std::span<const std::int64_t> samples) {
  if (samples.empty()) throw std::invalid_argument("fit_truncated_power_law: no samples");
  const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
  PowerLawFit fit;
  fit.lo = std::max<std::int64_t>(*lo_it, 1);
  fit.hi = *hi_it;
  if (fit.lo == fit.hi) throw std::invalid_argument("fit_truncated_power_law: all samples equal");
  double mean_log = 0;
  for (auto s : samples) mean_log += std::log(static_cast<double>(std::max<std::int64_t>(s, 1)));
  mean_log /= static_cast<double>(samples.size());
  auto neg_log_likelihood = [&](double a) {
    double z = 0;
    for (auto k = fit.lo; k <= fit.hi; ++k) z += std::pow(static_cast<double>(k), -a);
    return a * mean_log + std::log(z);
  };
  double lo = -5.0, hi = 10.0;
  const double ratio = (std::sqrt(5.0) - 1) / 2;
  double c = hi - ratio * (hi - lo), d = lo + ratio * (hi - lo);
  double fc = neg_log_likelihood(c), fd = neg_log_likelihood(d);
  for (int it = 0; it < 200 && hi - lo > 1e-9; ++it) {
    if (fc < fd) {
      hi = d, d = c, fd = fc;
      c = hi - ratio * (hi - lo), fc = neg_log_likelihood(c);
    } else {
      lo = c, c = d, fc = fd;
      d = lo + ratio * (hi - lo), fd = neg_log_likelihood(d);
    }
  }
  fit.exponent = (lo + hi) / 2;

  std::vector<std::int64_t> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  double model_cdf = 0, z = 0;
  for (auto k = fit.lo; k <= fit.hi; ++k) z += std::pow(static_cast<double>(k), -fit.exponent);
  std::size_t idx = 0;
  for (auto k = fit.lo; k <= fit.hi; ++k) {
    model_cdf += std::pow(static_cast<double>(k), -fit.exponent) / z;
    while (idx < sorted.size() && sorted[idx] <= k) ++idx;
    const double empirical = static_cast<double>(idx) / static_cast<double>(sorted.size());
    fit.ks_distance = std::max(fit.ks_distance, std::abs(empirical - model_cdf));
  }
  return fit;
}

}  // namespace faircd
