#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "faircd/cd/modularity.hpp"
#include "faircd/core/random.hpp"

namespace faircd {

namespace detail {

// Weighted graph with separate self-loop weights, used for aggregation.
struct WeightedGraph {
  std::vector<std::vector<std::pair<std::uint32_t, double>>> adjacency;  // no self entries
  std::vector<double> loops;

  std::size_t size() const { return adjacency.size(); }
  double strength(std::uint32_t u) const {
    double s = 2 * loops[u];
    for (const auto& [v, w] : adjacency[u]) s += w;
    return s;
  }

  static WeightedGraph from(const Graph& g) {
    WeightedGraph wg;
    wg.adjacency.resize(g.node_count());
    wg.loops.assign(g.node_count(), 0);
    for (NodeId u = 0; u < g.node_count(); ++u)
      for (NodeId v : g.neighbors(u)) wg.adjacency[u].emplace_back(v, 1.0);
    return wg;
  }
};

// One round of local moves. Returns true when any node moved.
inline bool louvain_local_moves(const WeightedGraph& g, std::vector<std::uint32_t>& community, Rng& rng) {
  const std::size_t n = g.size();
  std::vector<double> strength(n), total(n, 0);
  double two_m = 0;
  for (std::uint32_t u = 0; u < n; ++u) {
    strength[u] = g.strength(u);
    total[community[u]] += strength[u];
    two_m += strength[u];
  }
  if (two_m == 0) return false;

  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  rng.shuffle(order);
  std::vector<double> link(n, 0);
  std::vector<char> seen(n, 0);
  std::vector<std::uint32_t> touched;
  bool any_move = false;
  constexpr double min_gain = 1e-12;
  for (bool moved = true; moved;) {
    moved = false;
    for (auto u : order) {
      const auto home = community[u];
      touched.clear();
      touched.push_back(home);
      seen[home] = 1;
      for (const auto& [v, w] : g.adjacency[u]) {
        const auto c = community[v];
        if (!seen[c]) {
          seen[c] = 1;
          touched.push_back(c);
        }
        link[c] += w;
      }
      total[home] -= strength[u];
      auto best = home;
      double best_gain = link[home] - total[home] * strength[u] / two_m;
      for (auto c : touched) {
        const double gain = link[c] - total[c] * strength[u] / two_m;
        if (gain > best_gain + min_gain) {
          best_gain = gain;
          best = c;
        }
      }
      total[best] += strength[u];
      community[u] = best;
      if (best != home) moved = any_move = true;
      for (auto c : touched) link[c] = 0, seen[c] = 0;
    }
  }
  return any_move;
}

inline WeightedGraph aggregate(const WeightedGraph& g, const std::vector<std::uint32_t>& community,
                               std::uint32_t count) {
  WeightedGraph out;
  out.adjacency.resize(count);
  out.loops.assign(count, 0);
  std::vector<std::vector<std::pair<std::uint32_t, double>>> raw(count);
  for (std::uint32_t u = 0; u < g.size(); ++u) {
    const auto cu = community[u];
    out.loops[cu] += g.loops[u];
    for (const auto& [v, w] : g.adjacency[u]) {
      const auto cv = community[v];
      if (cu == cv) {
        if (u < v) out.loops[cu] += w;
      } else {
        raw[cu].emplace_back(cv, w);
      }
    }
  }
  for (std::uint32_t c = 0; c < count; ++c) {
    auto& r = raw[c];
    std::sort(r.begin(), r.end());
    for (const auto& [v, w] : r) {
      if (!out.adjacency[c].empty() && out.adjacency[c].back().first == v) out.adjacency[c].back().second += w;
      else out.adjacency[c].emplace_back(v, w);
    }
  }
  return out;
}

}  // namespace detail

// Louvain: local moves in a seeded node order, then aggregation of
// communities into nodes, repeated until a level makes no move.
inline Partition louvain(const Graph& g, std::uint64_t seed) {
  if (g.node_count() == 0) throw std::invalid_argument("louvain: empty graph");
  Rng rng(seed);
  auto level = detail::WeightedGraph::from(g);
  std::vector<std::uint32_t> membership(g.node_count());
  std::iota(membership.begin(), membership.end(), 0u);
  for (;;) {
    std::vector<std::uint32_t> community(level.size());
    std::iota(community.begin(), community.end(), 0u);
    if (!detail::louvain_local_moves(level, community, rng)) break;
    std::vector<std::uint32_t> rename(level.size(), UINT32_MAX);
    std::uint32_t next = 0;
    for (auto& c : community) {
      if (rename[c] == UINT32_MAX) rename[c] = next++;
      c = rename[c];
    }
    for (auto& m : membership) m = community[m];
    if (next == level.size()) break;
    level = detail::aggregate(level, community, next);
  }
  return compact_partition(membership);
}

}  // namespace faircd
