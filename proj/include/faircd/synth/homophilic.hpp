#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "faircd/core/error.hpp"
#include "faircd/core/random.hpp"
#include "faircd/synth/lfr.hpp"
#include "faircd/synth/wiring.hpp"

namespace faircd {

struct HomophilicParams {
  std::size_t n_major = 70;
  std::size_t n_minor = 40;
  double homophily = 0.9;  // probability that an edge endpoint is drawn from the own group
  std::size_t target_edges = 900;
  std::uint64_t seed = 0;

  std::size_t n() const { return n_major + n_minor; }

  void validate() const {
    if (n() < 2) throw std::invalid_argument("homophilic parameters: need at least two nodes");
    if (!(homophily >= 0 && homophily <= 1)) throw std::invalid_argument("homophilic parameters: homophily outside [0, 1]");
    if ((n_major == 0 || n_minor == 0) && homophily < 1)
      throw std::invalid_argument("homophilic parameters: an empty group requires homophily 1");
    if (target_edges > n() * (n() - 1) / 2) throw InfeasibleError("homophilic parameters: more edges than node pairs");
  }
};

// Two-group network grown by homophilic preferential attachment. Nodes
// 0..n_major-1 form the majority (community 0), the rest the minority
// (community 1). Nodes arrive in a seeded random order; each new edge picks
// the partner group (own group with probability `homophily`) and then a
// partner in it with probability proportional to degree + 1. Edges that
// cannot be placed on arrival are added afterwards between random nodes
// under the same rule until the edge budget is met.
inline SyntheticNetwork generate_homophilic(const HomophilicParams& p) {
  p.validate();
  Rng rng(p.seed);
  const std::size_t n = p.n();
  std::vector<int> group(n);
  for (std::size_t u = 0; u < n; ++u) group[u] = u < p.n_major ? 0 : 1;

  std::vector<NodeId> arrival(n);
  std::iota(arrival.begin(), arrival.end(), NodeId{0});
  rng.shuffle(arrival);

  detail::EdgeSet edges;
  std::vector<std::size_t> degree(n, 0);
  std::vector<char> present(n, 0);

  auto pick_partner = [&](NodeId u) -> std::optional<NodeId> {
    const int want = rng.bernoulli(p.homophily) ? group[u] : 1 - group[u];
    double total = 0;
    for (NodeId v = 0; v < n; ++v)
      if (present[v] && v != u && group[v] == want && !edges.contains(u, v)) total += static_cast<double>(degree[v] + 1);
    if (total == 0) return std::nullopt;
    double r = rng.uniform() * total;
    std::optional<NodeId> last;
    for (NodeId v = 0; v < n; ++v) {
      if (!present[v] || v == u || group[v] != want || edges.contains(u, v)) continue;
      last = v;
      r -= static_cast<double>(degree[v] + 1);
      if (r < 0) return v;
    }
    return last;
  };
  auto connect = [&](NodeId u, NodeId v) {
    edges.insert(u, v);
    ++degree[u];
    ++degree[v];
  };

  const std::size_t arrivals = n - 1;
  const std::size_t base = p.target_edges / arrivals;
  const std::size_t extra = p.target_edges % arrivals;
  present[arrival[0]] = 1;
  for (std::size_t t = 1; t < n; ++t) {
    const NodeId u = arrival[t];
    present[u] = 1;
    // Later arrivals take the remainder: they have more partners available.
    const std::size_t quota = base + (t > arrivals - extra ? 1 : 0);
    for (std::size_t e = 0; e < quota && edges.size() < p.target_edges; ++e)
      if (auto v = pick_partner(u)) connect(u, *v);
  }
  const std::size_t budget = 100 * (p.target_edges + n);
  for (std::size_t attempt = 0; edges.size() < p.target_edges && attempt < budget; ++attempt) {
    const auto u = static_cast<NodeId>(rng.index(n));
    if (auto v = pick_partner(u)) connect(u, *v);
  }
  if (edges.size() * 100 < p.target_edges * 95)
    throw InfeasibleError("homophilic generator placed only " + std::to_string(edges.size()) + " of " +
                          std::to_string(p.target_edges) + " edges");

  std::vector<std::uint64_t> labels(group.begin(), group.end());
  auto truth = Partition::from_labels(labels);
  if (truth.community_count() == 2) {
    std::vector<CommunityId> assignment(truth.assignment().begin(), truth.assignment().end());
    truth = Partition(std::move(assignment), {"majority", "minority"});
  }
  const auto edge_list = edges.edges();
  return {Graph::from_edges(n, edge_list), std::move(truth), 0};
}

// Fraction of edges whose endpoints share a ground-truth community.
inline double intra_fraction(const Graph& g, const Partition& truth) {
  return g.edge_count() == 0 ? 0.0 : 1.0 - empirical_mixing(g, truth);
}

// Moves s random minority nodes to the majority label and s random majority
// nodes to the minority label. The minority is the smaller community (ties:
// community 1).
inline Partition node_swap(const Partition& truth, std::size_t s, std::uint64_t seed) {
  if (truth.community_count() != 2) throw std::invalid_argument("node_swap: need exactly two communities");
  const CommunityId minority = truth.members(0).size() < truth.members(1).size() ? 0 : 1;
  const CommunityId majority = 1 - minority;
  if (s > truth.members(minority).size())
    throw std::invalid_argument("node_swap: cannot swap " + std::to_string(s) + " nodes, minority has " +
                                std::to_string(truth.members(minority).size()));
  Rng rng(seed);
  std::vector<NodeId> from_minor(truth.members(minority).begin(), truth.members(minority).end());
  std::vector<NodeId> from_major(truth.members(majority).begin(), truth.members(majority).end());
  rng.shuffle(from_minor);
  rng.shuffle(from_major);
  std::vector<CommunityId> assignment(truth.assignment().begin(), truth.assignment().end());
  for (std::size_t i = 0; i < s; ++i) {
    assignment[from_minor[i]] = majority;
    assignment[from_major[i]] = minority;
  }
  return Partition(std::move(assignment), {truth.name(0), truth.name(1)});
}

}  // namespace faircd
