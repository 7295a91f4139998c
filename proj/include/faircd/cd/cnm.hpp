#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <tuple>
#include <vector>

#include "faircd/cd/modularity.hpp"

namespace faircd {

// Clauset-Newman-Moore greedy agglomeration. Each step merges the connected
// pair with the largest modularity gain (ties: lowest id pair); the merged
// community keeps the lower id. Stops once no merge increases modularity,
// which is the maximum of the merge sequence: gains of a merged pair are sums
// of the gains of its parts, so they cannot turn positive again.
inline Partition cnm_greedy(const Graph& g) {
  const std::size_t n = g.node_count();
  if (n == 0) throw std::invalid_argument("cnm_greedy: empty graph");
  std::vector<std::uint32_t> membership(n);
  std::iota(membership.begin(), membership.end(), 0u);
  if (g.edge_count() == 0) return compact_partition(membership);

  // Gains are kept as ΔQ·(2m)²/2 = 2m·e_ij − d_i·d_j, an exact integer, so
  // ties are genuine ties. d_i is the volume of community i.
  const auto two_m = static_cast<std::int64_t>(2 * g.edge_count());
  std::vector<std::int64_t> volume(n);
  for (NodeId u = 0; u < n; ++u) volume[u] = static_cast<std::int64_t>(g.degree(u));
  std::vector<std::map<std::uint32_t, std::int64_t>> gain(n);  // connected pairs only
  using Key = std::tuple<std::int64_t, std::uint32_t, std::uint32_t>;  // (-gain, i, j), i < j
  std::set<Key> heap;
  for (const Edge& e : g.edges()) {
    const std::int64_t dq = two_m - volume[e.first] * volume[e.second];
    gain[e.first][e.second] = dq;
    gain[e.second][e.first] = dq;
    heap.emplace(-dq, e.first, e.second);
  }
  auto key = [](std::int64_t dq, std::uint32_t a, std::uint32_t b) {
    return Key{-dq, std::min(a, b), std::max(a, b)};
  };

  // Union-find over merges, resolved at the end.
  std::vector<std::uint32_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0u);
  while (!heap.empty()) {
    const auto [neg_dq, i, j] = *heap.begin();
    if (-neg_dq <= 0) break;
    heap.erase(heap.begin());
    // Merge j into i.
    auto gi = std::move(gain[i]);
    auto gj = std::move(gain[j]);
    gi.erase(j);
    gj.erase(i);
    for (const auto& [c, dq] : gi) heap.erase(key(dq, i, c));
    for (const auto& [c, dq] : gj) {
      heap.erase(key(dq, j, c));
      gain[c].erase(j);
    }
    std::map<std::uint32_t, std::int64_t> merged;
    for (const auto& [c, dq] : gi) {
      const auto it = gj.find(c);
      merged[c] = it != gj.end() ? dq + it->second : dq - volume[j] * volume[c];
    }
    for (const auto& [c, dq] : gj)
      if (!gi.count(c)) merged[c] = dq - volume[i] * volume[c];
    for (const auto& [c, dq] : merged) {
      gain[c][i] = dq;
      heap.insert(key(dq, i, c));
    }
    gain[i] = std::move(merged);
    gain[j].clear();
    volume[i] += volume[j];
    volume[j] = 0;
    parent[j] = i;
  }
  for (NodeId u = 0; u < n; ++u) {
    auto r = u;
    while (parent[r] != r) r = parent[r];
    membership[u] = r;
  }
  return compact_partition(membership);
}

}  // namespace faircd
