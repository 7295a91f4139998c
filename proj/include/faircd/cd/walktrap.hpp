#pragma once

#include <map>
#include <numeric>
#include <set>
#include <tuple>
#include <vector>

#include "faircd/cd/modularity.hpp"

namespace faircd {

// Walktrap. Every vertex gets a self-loop, so the walk moves from u to each
// of the deg(u)+1 members of its closed neighborhood with equal probability.
// A community C is described by P_C, the average t-step distribution of walks
// started at its members. Adjacent communities are merged by smallest
//   Δσ(C1, C2) = (1/n) |C1||C2| / (|C1|+|C2|) Σ_k (P_C1[k] - P_C2[k])² / d(k)
// with d(k) = deg(k)+1; the returned partition is the one with the highest
// modularity along the merge sequence. Memory is O(n²).
inline Partition walktrap(const Graph& g, int steps = 4) {
  const std::size_t n = g.node_count();
  if (n == 0) throw std::invalid_argument("walktrap: empty graph");
  if (steps < 1) throw std::invalid_argument("walktrap: walk length must be at least 1");
  std::vector<std::uint32_t> identity(n);
  std::iota(identity.begin(), identity.end(), 0u);
  if (g.edge_count() == 0) return compact_partition(identity);

  std::vector<double> inv_d(n);
  for (NodeId u = 0; u < n; ++u) inv_d[u] = 1.0 / static_cast<double>(g.degree(u) + 1);

  std::vector<std::vector<double>> profile(n);
  {
    std::vector<double> next(n);
    for (NodeId s = 0; s < n; ++s) {
      std::vector<double> cur(n, 0.0);
      cur[s] = 1.0;
      for (int t = 0; t < steps; ++t) {
        std::fill(next.begin(), next.end(), 0.0);
        for (NodeId u = 0; u < n; ++u) {
          if (cur[u] == 0) continue;
          const double out = cur[u] * inv_d[u];
          next[u] += out;
          for (NodeId v : g.neighbors(u)) next[v] += out;
        }
        cur.swap(next);
      }
      profile[s] = std::move(cur);
    }
  }

  std::vector<double> size(n, 1.0);
  auto delta_sigma = [&](std::uint32_t a, std::uint32_t b) {
    const auto& pa = profile[a];
    const auto& pb = profile[b];
    double r2 = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const double d = pa[k] - pb[k];
      r2 += d * d * inv_d[k];
    }
    return size[a] * size[b] / (size[a] + size[b]) * r2 / static_cast<double>(n);
  };

  // Neighbor bookkeeping: Δσ and the number of edges between the two communities.
  struct Link {
    double sigma;
    double edges;
  };
  std::vector<std::map<std::uint32_t, Link>> links(n);
  using Key = std::tuple<double, std::uint32_t, std::uint32_t>;
  std::set<Key> queue;
  auto key = [](double s, std::uint32_t a, std::uint32_t b) { return Key{s, std::min(a, b), std::max(a, b)}; };
  for (const Edge& e : g.edges()) {
    const double s = delta_sigma(e.first, e.second);
    links[e.first][e.second] = {s, 1.0};
    links[e.second][e.first] = {s, 1.0};
    queue.insert(key(s, e.first, e.second));
  }

  const double m = static_cast<double>(g.edge_count());
  std::vector<double> inside(n, 0.0), share(n);
  double q = 0;
  for (NodeId u = 0; u < n; ++u) {
    share[u] = static_cast<double>(g.degree(u)) / (2 * m);
    q -= share[u] * share[u];
  }
  double best_q = q;
  std::size_t best_merges = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> merges;

  while (!queue.empty()) {
    const auto [sigma, a, b] = *queue.begin();
    queue.erase(queue.begin());
    // Merge b into a.
    auto la = std::move(links[a]);
    auto lb = std::move(links[b]);
    const double between = la.at(b).edges;
    la.erase(b);
    lb.erase(a);
    for (const auto& [c, l] : la) {
      queue.erase(key(l.sigma, a, c));
      links[c].erase(a);
    }
    for (const auto& [c, l] : lb) {
      queue.erase(key(l.sigma, b, c));
      links[c].erase(b);
    }
    const double sa = size[a], sb = size[b];
    std::map<std::uint32_t, Link> merged;
    for (const auto& [c, l] : la) merged[c] = {0, l.edges};
    for (const auto& [c, l] : lb) merged[c].edges += l.edges;

    for (std::size_t k = 0; k < n; ++k) profile[a][k] = (sa * profile[a][k] + sb * profile[b][k]) / (sa + sb);
    std::vector<double>().swap(profile[b]);
    size[a] = sa + sb;
    for (auto& [c, l] : merged) {
      const auto ia = la.find(c);
      const auto ib = lb.find(c);
      if (ia != la.end() && ib != lb.end()) {
        // Adjacent to both halves: Lance-Williams update for Ward distances.
        const double sc = size[c];
        l.sigma = ((sa + sc) * ia->second.sigma + (sb + sc) * ib->second.sigma - sc * sigma) / (sa + sb + sc);
      } else {
        l.sigma = delta_sigma(a, c);
      }
      links[c][a] = l;
      queue.insert(key(l.sigma, a, c));
    }
    links[a] = std::move(merged);

    q += 2 * (between / (2 * m)) - 2 * share[a] * share[b];
    share[a] += share[b];
    share[b] = 0;
    merges.emplace_back(a, b);
    if (q > best_q + 1e-12) {
      best_q = q;
      best_merges = merges.size();
    }
  }

  std::vector<std::uint32_t> parent(identity);
  for (std::size_t i = 0; i < best_merges; ++i) parent[merges[i].second] = merges[i].first;
  std::vector<std::uint32_t> membership(n);
  for (NodeId u = 0; u < n; ++u) {
    auto r = u;
    while (parent[r] != r) r = parent[r];
    membership[u] = r;
  }
  return compact_partition(membership);
}

}  // namespace faircd
