#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <queue>
#include <vector>

#include "faircd/cd/modularity.hpp"
#include "faircd/core/random.hpp"

namespace faircd {

inline bool is_connected(const Graph& g) {
  const std::size_t n = g.node_count();
  if (n == 0) return true;
  std::vector<char> seen(n, 0);
  std::queue<NodeId> frontier;
  frontier.push(0);
  seen[0] = 1;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const NodeId u = frontier.front();
    frontier.pop();
    for (NodeId v : g.neighbors(u))
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        frontier.push(v);
      }
  }
  return reached == n;
}

// Fluid communities. k fluids start on random distinct vertices; a
// community's density is 1/|community|. Vertices are visited in a seeded
// order each round and join the community with the largest summed density
// over their closed neighborhood, keeping their own community on ties.
// Densities are compared exactly as count/size fractions.
inline Partition fluid(const Graph& g, std::size_t k, std::uint64_t seed, int max_rounds = 1000) {
  const std::size_t n = g.node_count();
  if (k < 1 || k > n) throw std::invalid_argument("fluid: k must lie in [1, n]");
  if (!is_connected(g)) throw std::invalid_argument("fluid: graph must be connected");
  Rng rng(seed);
  constexpr std::uint32_t none = UINT32_MAX;
  std::vector<std::uint32_t> community(n, none);
  std::vector<std::int64_t> size(k, 0);
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  rng.shuffle(order);
  for (std::uint32_t c = 0; c < k; ++c) {
    community[order[c]] = c;
    size[c] = 1;
  }

  std::vector<std::int64_t> count(k, 0);
  std::vector<std::uint32_t> present, best;
  for (int round = 0; round < max_rounds; ++round) {
    rng.shuffle(order);
    bool changed = false;
    for (NodeId u : order) {
      present.clear();
      auto tally = [&](NodeId v) {
        const auto c = community[v];
        if (c == none) return;
        if (count[c]++ == 0) present.push_back(c);
      };
      tally(u);
      for (NodeId v : g.neighbors(u)) tally(v);
      if (present.empty()) continue;
      best.clear();
      for (auto c : present) {
        if (best.empty()) {
          best.push_back(c);
          continue;
        }
        // count[c]/size[c] versus count[best]/size[best]
        const auto lhs = count[c] * size[best[0]];
        const auto rhs = count[best[0]] * size[c];
        if (lhs > rhs) best.assign(1, c);
        else if (lhs == rhs) best.push_back(c);
      }
      for (auto c : present) count[c] = 0;
      const auto home = community[u];
      if (home != none && std::find(best.begin(), best.end(), home) != best.end()) continue;
      std::sort(best.begin(), best.end());
      const auto target = best[rng.index(best.size())];
      if (home != none) --size[home];
      ++size[target];
      community[u] = target;
      changed = true;
    }
    if (!changed) break;
  }
  if (std::find(community.begin(), community.end(), none) != community.end())
    throw std::runtime_error("fluid: vertices left unassigned after max_rounds");
  return compact_partition(community);
}

}  // namespace faircd
