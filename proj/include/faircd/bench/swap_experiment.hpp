#pragma once

#include <array>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "faircd/bench/csv.hpp"
#include "faircd/bench/stats.hpp"
#include "faircd/group_fairness.hpp"
#include "faircd/synth/homophilic.hpp"

namespace faircd::bench {

struct SwapRow {
  std::size_t swaps = 0;
  double swap_fraction = 0;  // swaps / minority size
  // [group][metric], group 0 = minority, 1 = majority
  std::array<std::array<Summary, 3>, 2> scores{};
  std::array<Summary, 3> phi_size{};  // per metric
  std::size_t switched = 0;           // iterations where the minority mapped to the other label
  std::size_t iterations = 0;

  double switched_fraction() const { return iterations ? static_cast<double>(switched) / iterations : 0; }
};

struct SwapResult {
  std::vector<SwapRow> rows;
  // First swap count (> 0) where the mean minority FCCN exceeds the majority's.
  std::optional<std::size_t> crossover;
  std::size_t minority_size = 0;

  std::optional<double> crossover_fraction() const {
    if (!crossover) return std::nullopt;
    return static_cast<double>(*crossover) / static_cast<double>(minority_size);
  }
};

// Ground truth is the homophilic network's own grouping; the "prediction" is
// that grouping after node_swap(s). Iteration i uses its own network and swap
// draw, and the same network is reused for every s of that iteration.
inline SwapResult node_swap_experiment(const HomophilicParams& params, std::size_t s_first, std::size_t s_last,
                                       std::size_t iterations, TiePolicy policy = TiePolicy::deterministic) {
  params.validate();
  if (iterations < 1) throw std::invalid_argument("node_swap_experiment: need at least one iteration");
  if (s_first > s_last) throw std::invalid_argument("node_swap_experiment: empty swap range");
  std::vector<SyntheticNetwork> networks;
  for (std::size_t it = 0; it < iterations; ++it) {
    auto p = params;
    p.seed = derive_seed(params.seed, "network", it);
    networks.push_back(generate_homophilic(p));
  }
  const auto& truth0 = networks.front().truth;
  const CommunityId minority = truth0.members(0).size() < truth0.members(1).size() ? 0 : 1;
  SwapResult result;
  result.minority_size = truth0.members(minority).size();
  if (s_last > result.minority_size)
    throw std::invalid_argument("node_swap_experiment: " + std::to_string(s_last) + " swaps exceed the minority size " +
                                std::to_string(result.minority_size));

  for (std::size_t s = s_first; s <= s_last; ++s) {
    SwapRow row;
    row.swaps = s;
    row.swap_fraction = static_cast<double>(s) / static_cast<double>(result.minority_size);
    row.iterations = iterations;
    for (std::size_t it = 0; it < iterations; ++it) {
      const auto& net = networks[it];
      const std::uint64_t seed = derive_seed(params.seed, "swap", s, it);
      const auto predicted = node_swap(net.truth, s, seed);
      const auto report = fairness_report(net.graph, net.truth, predicted, policy, derive_seed(seed, "ties"));
      for (CommunityId group = 0; group < 2; ++group) {
        const CommunityId c = group == 0 ? minority : 1 - minority;
        const auto& score = report.scores[c];
        for (auto m : all_metrics)
          if (auto v = score_value(score, m)) row.scores[group][static_cast<std::size_t>(m)].add(v->to_double());
      }
      if (report.mapping.pairs[minority].predicted != minority) ++row.switched;
      for (auto m : all_metrics)
        if (const auto& phi = report.cell(m, Property::size).phi) row.phi_size[static_cast<std::size_t>(m)].add(*phi);
    }
    const auto fccn = static_cast<std::size_t>(Metric::fccn);
    if (!result.crossover && s > 0 && *row.scores[0][fccn].mean() > *row.scores[1][fccn].mean())
      result.crossover = s;
    result.rows.push_back(std::move(row));
  }
  return result;
}

inline void write_swap_csv(std::ostream& out, const SwapResult& r) {
  std::vector<std::string> h = {"swaps", "swap_fraction", "iterations"};
  for (const char* group : {"minority", "majority"})
    for (auto m : all_metrics)
      for (const char* stat : {"_mean", "_std"}) h.push_back(std::string(group) + "_" + std::string(to_string(m)) + stat);
  for (auto m : all_metrics)
    for (const char* stat : {"_mean", "_std"}) h.push_back("phi_" + std::string(to_string(m)) + "_size" + stat);
  h.push_back("switched_fraction");
  h.push_back("after_crossover");
  write_csv_row(out, h);
  for (const auto& row : r.rows) {
    std::vector<std::string> f = {std::to_string(row.swaps), format_exact(row.swap_fraction),
                                  std::to_string(row.iterations)};
    for (const auto& group : row.scores)
      for (const auto& s : group) {
        f.push_back(format_optional(s.mean()));
        f.push_back(format_optional(s.stddev()));
      }
    for (const auto& s : row.phi_size) {
      f.push_back(format_optional(s.mean()));
      f.push_back(format_optional(s.stddev()));
    }
    f.push_back(format_exact(row.switched_fraction()));
    f.push_back(r.crossover && row.swaps >= *r.crossover ? "true" : "false");
    write_csv_row(out, f);
  }
}

}  // namespace faircd::bench
