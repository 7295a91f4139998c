#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <tuple>
#include <vector>

#include "faircd/graph/partition.hpp"
#include "faircd/mapping.hpp"

namespace faircd {

// Sparse contingency table n_ij = |c_i ∩ p_j| with its margins.
struct ContingencyTable {
  std::vector<Overlap> cells;  // non-zero cells sorted by (i, j)
  std::vector<std::int64_t> row_sums;
  std::vector<std::int64_t> col_sums;
  std::vector<NodeId> row_first;  // smallest node of each ground-truth community
  std::int64_t total = 0;

  static ContingencyTable build(const Partition& truth, const Partition& predicted) {
    ContingencyTable t;
    t.cells = overlaps(truth, predicted);
    t.row_sums.assign(truth.community_count(), 0);
    for (CommunityId c = 0; c < truth.community_count(); ++c) t.row_first.push_back(truth.members(c).front());
    t.col_sums.assign(predicted.community_count(), 0);
    for (const auto& c : t.cells) {
      t.row_sums[c.truth] += c.count;
      t.col_sums[c.predicted] += c.count;
    }
    t.total = static_cast<std::int64_t>(truth.node_count());
    return t;
  }

  std::size_t rows() const { return row_sums.size(); }
  std::size_t cols() const { return col_sums.size(); }

  // The two partitions group nodes identically.
  bool is_bijection() const { return cells.size() == rows() && cells.size() == cols(); }
};

namespace detail {

inline double entropy(const std::vector<std::int64_t>& sums, std::int64_t total) {
  const auto n = static_cast<double>(total);
  double h = 0;
  for (auto s : sums)
    if (s > 0) h += static_cast<double>(s) / n * std::log(n / static_cast<double>(s));
  return h;
}

inline double mutual_information(const ContingencyTable& t) {
  const auto n = static_cast<double>(t.total);
  double mi = 0;
  for (const auto& c : t.cells) {
    const auto nij = static_cast<double>(c.count);
    mi += nij / n *
          std::log(n * nij / (static_cast<double>(t.row_sums[c.truth]) * static_cast<double>(t.col_sums[c.predicted])));
  }
  return std::max(mi, 0.0);
}

inline double choose2(std::int64_t x) { return static_cast<double>(x) * static_cast<double>(x - 1) / 2.0; }

}  // namespace detail

enum class NmiNormalization { arithmetic, max };

// Mutual information in nats over the chosen mean of the two entropies.
inline double nmi(const ContingencyTable& t, NmiNormalization norm = NmiNormalization::arithmetic) {
  if (t.total == 0) return 1.0;
  if (t.is_bijection()) return 1.0;
  const double hc = detail::entropy(t.row_sums, t.total);
  const double hp = detail::entropy(t.col_sums, t.total);
  const double denom = norm == NmiNormalization::arithmetic ? (hc + hp) / 2 : std::max(hc, hp);
  if (denom == 0) return 1.0;
  return std::clamp(detail::mutual_information(t) / denom, 0.0, 1.0);
}

inline double nmi(const Partition& truth, const Partition& predicted,
                  NmiNormalization norm = NmiNormalization::arithmetic) {
  return nmi(ContingencyTable::build(truth, predicted), norm);
}

// Hubert-Arabie adjusted Rand index. Pair counts are exact integers.
inline double ari(const ContingencyTable& t) {
  if (t.total < 2) throw std::invalid_argument("ari: need at least two nodes");
  std::int64_t index = 0, rows = 0, cols = 0;
  for (const auto& c : t.cells) index += c.count * (c.count - 1) / 2;
  for (auto a : t.row_sums) rows += a * (a - 1) / 2;
  for (auto b : t.col_sums) cols += b * (b - 1) / 2;
  const double expected = static_cast<double>(rows) * static_cast<double>(cols) / detail::choose2(t.total);
  const double max_index = static_cast<double>(rows + cols) / 2.0;
  const double denom = max_index - expected;
  if (denom == 0) return 1.0;
  return (static_cast<double>(index) - expected) / denom;
}

inline double ari(const Partition& truth, const Partition& predicted) {
  return ari(ContingencyTable::build(truth, predicted));
}

// Normalized F1, directional from ground truth to prediction:
//   every predicted community p_j is matched to the ground-truth community
//   sharing the most nodes with it and scored with F1 = 2|c∩p| / (|c|+|p|);
//   overlap ties go to the higher F1 (the smaller community), then to the
//   community holding the smallest node, so community ids never matter;
//   coverage   = distinct matched ground-truth communities / m
//   redundancy = k / distinct matched ground-truth communities
//   NF1        = mean F1 * coverage / redundancy
inline double nf1(const ContingencyTable& t) {
  const std::size_t k = t.cols();
  if (k == 0) return 0.0;
  std::vector<const Overlap*> best(k, nullptr);
  for (const auto& c : t.cells) {
    auto& b = best[c.predicted];
    if (!b) {
      b = &c;
      continue;
    }
    const auto key = [&t](const Overlap& o) {
      return std::make_tuple(-o.count, t.row_sums[o.truth], t.row_first[o.truth]);
    };
    if (key(c) < key(*b)) b = &c;
  }
  double f1_sum = 0;
  std::vector<char> matched(t.rows(), 0);
  for (std::size_t j = 0; j < k; ++j) {
    const Overlap& o = *best[j];
    f1_sum += 2.0 * static_cast<double>(o.count) / static_cast<double>(t.row_sums[o.truth] + t.col_sums[j]);
    matched[o.truth] = 1;
  }
  const auto distinct = static_cast<double>(std::count(matched.begin(), matched.end(), 1));
  const double coverage = distinct / static_cast<double>(t.rows());
  const double redundancy = static_cast<double>(k) / distinct;
  return f1_sum / static_cast<double>(k) * coverage / redundancy;
}

inline double nf1(const Partition& truth, const Partition& predicted) {
  return nf1(ContingencyTable::build(truth, predicted));
}

// Approximate log of the number of non-negative integer matrices with row
// sums a (R rows) and column sums b (S columns), n = Σa = Σb:
//   w   = n / (n + RS/2)
//   x_r = (1-w)/R + w a_r/n,          y_s = (1-w)/S + w b_s/n
//   mu  = (R+1) / (R Σ_s y_s²) - 1/R, nu  = (S+1) / (S Σ_r x_r²) - 1/S
//   log Ω ≈ (R-1)(S-1) log(n + RS/2)
//         + (R+nu-2)/2 Σ_s log y_s + (S+mu-2)/2 Σ_r log x_r
//         + ½ log[ Γ(mu R) Γ(nu S) / (Γ(nu)^S Γ(R)^S Γ(mu)^R Γ(S)^R) ]
inline double log_contingency_count(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
  const auto R = static_cast<double>(a.size());
  const auto S = static_cast<double>(b.size());
  double n = 0;
  for (auto v : a) n += static_cast<double>(v);
  if (n == 0 || a.size() <= 1 || b.size() <= 1) return 0.0;  // exactly one table
  const double w = n / (n + R * S / 2);
  double sum_x2 = 0, sum_y2 = 0, sum_log_x = 0, sum_log_y = 0;
  for (auto v : a) {
    const double x = (1 - w) / R + w * static_cast<double>(v) / n;
    sum_x2 += x * x;
    sum_log_x += std::log(x);
  }
  for (auto v : b) {
    const double y = (1 - w) / S + w * static_cast<double>(v) / n;
    sum_y2 += y * y;
    sum_log_y += std::log(y);
  }
  const double mu = (R + 1) / (R * sum_y2) - 1 / R;
  const double nu = (S + 1) / (S * sum_x2) - 1 / S;
  const double gamma_term = std::lgamma(mu * R) + std::lgamma(nu * S) - S * std::lgamma(nu) - S * std::lgamma(R) -
                            R * std::lgamma(mu) - R * std::lgamma(S);
  return (R - 1) * (S - 1) * std::log(n + R * S / 2) + (R + nu - 2) / 2 * sum_log_y + (S + mu - 2) / 2 * sum_log_x +
         gamma_term / 2;
}

struct RmiResult {
  double rmi = 0;         // nats per node
  double normalized = 0;  // 2 RMI(C;P) / (RMI(C;C) + RMI(P;P))
};

// Reduced mutual information: I(C;P) - log Ω(a, b) / n, with Ω approximated
// by log_contingency_count.
inline RmiResult rmi_approx(const ContingencyTable& t) {
  RmiResult r;
  if (t.total == 0) return r;
  const auto n = static_cast<double>(t.total);
  r.rmi = detail::mutual_information(t) - log_contingency_count(t.row_sums, t.col_sums) / n;
  const double self_c = detail::entropy(t.row_sums, t.total) - log_contingency_count(t.row_sums, t.row_sums) / n;
  const double self_p = detail::entropy(t.col_sums, t.total) - log_contingency_count(t.col_sums, t.col_sums) / n;
  const double denom = self_c + self_p;
  // Identical groupings normalize to exactly 1, not 1 plus rounding.
  if (t.is_bijection()) r.normalized = denom != 0 ? 1.0 : 0.0;
  else r.normalized = denom != 0 ? 2 * r.rmi / denom : 0.0;
  return r;
}

inline RmiResult rmi_approx(const Partition& truth, const Partition& predicted) {
  return rmi_approx(ContingencyTable::build(truth, predicted));
}

struct QualityScores {
  double nmi = 0;
  double ari = 0;
  double nf1 = 0;
  double rmi = 0;
  double nrmi = 0;
};

inline QualityScores quality_scores(const Partition& truth, const Partition& predicted,
                                    NmiNormalization norm = NmiNormalization::arithmetic) {
  const auto t = ContingencyTable::build(truth, predicted);
  const auto r = rmi_approx(t);
  return {nmi(t, norm), t.total >= 2 ? ari(t) : 1.0, nf1(t), r.rmi, r.normalized};
}

}  // namespace faircd
