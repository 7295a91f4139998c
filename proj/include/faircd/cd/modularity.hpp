#pragma once

#include <stdexcept>
#include <vector>

#include "faircd/graph/graph.hpp"
#include "faircd/graph/partition.hpp"

namespace faircd {

// Newman-Girvan modularity Q = Σ_c [ |E(c)|/|E| - (vol(c) / 2|E|)² ].
inline double modularity(const Graph& g, const Partition& p) {
  require_covers(g, p);
  if (g.edge_count() == 0) throw std::invalid_argument("modularity: graph has no edges");
  const std::size_t k = p.community_count();
  std::vector<double> inside(k, 0), volume(k, 0);
  for (const Edge& e : g.edges()) {
    const auto a = p.community_of(e.first), b = p.community_of(e.second);
    if (a == b) inside[a] += 1;
    volume[a] += 1;
    volume[b] += 1;
  }
  const auto m = static_cast<double>(g.edge_count());
  double q = 0;
  for (std::size_t c = 0; c < k; ++c) {
    const double share = volume[c] / (2 * m);
    q += inside[c] / m - share * share;
  }
  return q;
}

// Partition from a per-node community label, renumbered densely in order of
// first appearance along node ids.
inline Partition compact_partition(const std::vector<std::uint32_t>& raw) {
  std::vector<CommunityId> dense(raw.size());
  std::vector<CommunityId> rename;
  CommunityId next = 0;
  for (std::size_t u = 0; u < raw.size(); ++u) {
    if (raw[u] >= rename.size()) rename.resize(raw[u] + 1, UINT32_MAX);
    auto& slot = rename[raw[u]];
    if (slot == UINT32_MAX) slot = next++;
    dense[u] = slot;
  }
  return Partition(std::move(dense));
}

}  // namespace faircd
