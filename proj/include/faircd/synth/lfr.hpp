#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <numeric>
#include <string>
#include <vector>

#include "faircd/core/error.hpp"
#include "faircd/core/random.hpp"
#include "faircd/graph/graph.hpp"
#include "faircd/graph/partition.hpp"
#include "faircd/synth/powerlaw.hpp"
#include "faircd/synth/wiring.hpp"

namespace faircd {

struct LfrParams {
  std::size_t n = 1000;
  double mu = 0.2;    // expected fraction of a node's edges leaving its community
  double tau1 = 2.0;  // degree exponent
  double tau2 = 2.5;  // community-size exponent
  std::int64_t avg_degree = 20;
  std::int64_t max_degree = 50;
  std::int64_t min_community = 20;
  std::int64_t max_community = 100;
  std::uint64_t seed = 0;

  void validate() const {
    auto fail = [](const std::string& what) { throw std::invalid_argument("LFR parameters: " + what); };
    if (n < 2) fail("n must be at least 2");
    if (!(mu > 0 && mu < 1)) fail("mu must lie in (0, 1)");
    if (!(tau1 > 1) || !(tau2 > 1)) fail("tau1 and tau2 must exceed 1");
    if (avg_degree < 1 || avg_degree > max_degree) fail("need 1 <= avg_degree <= max_degree");
    if (static_cast<std::size_t>(max_degree) >= n) fail("max_degree must be below n");
    if (min_community < 1 || min_community > max_community) fail("need 1 <= min_community <= max_community");
    if (static_cast<std::size_t>(min_community) > n) fail("min_community exceeds n");
    if (static_cast<std::size_t>(max_community) > n) fail("max_community exceeds n");
  }
};

struct SyntheticNetwork {
  Graph graph;
  Partition truth;
  std::size_t unmatched_stubs = 0;
};

namespace detail {

inline std::vector<std::int64_t> lfr_community_sizes(const LfrParams& p, Rng& rng) {
  const DiscretePowerLaw law(p.min_community, p.max_community, p.tau2);
  std::vector<std::int64_t> sizes;
  std::int64_t total = 0;
  const auto n = static_cast<std::int64_t>(p.n);
  while (total < n) {
    sizes.push_back(law.sample(rng));
    total += sizes.back();
  }
  // Trim the overshoot from the most recent draws without going below the minimum.
  std::int64_t excess = total - n;
  for (auto it = sizes.rbegin(); it != sizes.rend() && excess > 0; ++it) {
    const auto cut = std::min(excess, *it - p.min_community);
    *it -= cut;
    excess -= cut;
  }
  if (excess > 0) {
    throw InfeasibleError("LFR: cannot split " + std::to_string(p.n) + " nodes into communities of size >= " +
                          std::to_string(p.min_community));
  }
  return sizes;
}

}  // namespace detail

// LFR benchmark graph: power-law degrees and community sizes, each node
// keeping about (1 - mu) of its edges inside its community. Pure function of
// the parameters, seed included.
inline SyntheticNetwork generate_lfr(const LfrParams& p) {
  p.validate();
  Rng rng(p.seed);
  const std::size_t n = p.n;

  const DiscretePowerLaw degree_law(lower_cutoff_for_mean(static_cast<double>(p.avg_degree), p.max_degree, p.tau1),
                                    p.max_degree, p.tau1);
  std::vector<std::int64_t> degree(n);
  for (auto& d : degree) d = degree_law.sample(rng);

  std::vector<std::int64_t> internal(n);
  std::int64_t max_internal = 0;
  for (std::size_t u = 0; u < n; ++u) {
    const double want = (1.0 - p.mu) * static_cast<double>(degree[u]);
    const double whole = std::floor(want);
    internal[u] = static_cast<std::int64_t>(whole) + (rng.bernoulli(want - whole) ? 1 : 0);
    max_internal = std::max(max_internal, internal[u]);
  }
  if (max_internal + 1 > p.max_community)
    throw InfeasibleError("LFR: internal degree " + std::to_string(max_internal) +
                          " does not fit in max_community " + std::to_string(p.max_community));

  std::vector<std::int64_t> sizes;
  constexpr int size_retries = 100;
  for (int attempt = 0;; ++attempt) {
    sizes = detail::lfr_community_sizes(p, rng);
    if (*std::max_element(sizes.begin(), sizes.end()) > max_internal) break;
    if (attempt + 1 == size_retries)
      throw InfeasibleError("LFR: no sampled community is large enough for internal degree " +
                            std::to_string(max_internal));
  }
  std::sort(sizes.begin(), sizes.end());
  const std::size_t k = sizes.size();

  // Assign nodes to communities, most demanding first. A node only joins a
  // community with room for all its internal edges; when every eligible
  // community is full, a random member is evicted and re-queued.
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  rng.shuffle(order);
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return internal[a] > internal[b]; });
  std::deque<NodeId> queue(order.begin(), order.end());
  std::vector<std::vector<NodeId>> members(k);
  constexpr CommunityId unassigned = UINT32_MAX;
  std::vector<CommunityId> community(n, unassigned);
  const std::size_t budget = 200 * n;
  for (std::size_t step = 0; !queue.empty(); ++step) {
    if (step == budget) throw InfeasibleError("LFR: community assignment did not settle");
    const NodeId u = queue.front();
    queue.pop_front();
    // sizes is ascending: eligible communities form a suffix.
    const auto first = static_cast<std::size_t>(
        std::upper_bound(sizes.begin(), sizes.end(), internal[u]) - sizes.begin());
    std::vector<CommunityId> open;
    for (std::size_t c = first; c < k; ++c)
      if (members[c].size() < static_cast<std::size_t>(sizes[c])) open.push_back(static_cast<CommunityId>(c));
    CommunityId target;
    if (!open.empty()) {
      target = open[rng.index(open.size())];
    } else {
      target = static_cast<CommunityId>(first + rng.index(k - first));
      auto& full = members[target];
      const auto victim = rng.index(full.size());
      community[full[victim]] = unassigned;
      queue.push_front(full[victim]);
      full[victim] = full.back();
      full.pop_back();
    }
    members[target].push_back(u);
    community[u] = target;
  }

  detail::EdgeSet edges;
  std::size_t unmatched = 0;
  std::vector<NodeId> external_stubs;
  for (std::size_t c = 0; c < k; ++c) {
    auto& group = members[c];
    std::sort(group.begin(), group.end());
    std::int64_t stub_total = 0;
    for (NodeId u : group) stub_total += internal[u];
    if (stub_total % 2 == 1) {
      // Hand one internal stub to the external side to make the count even.
      std::vector<NodeId> candidates;
      for (NodeId u : group)
        if (internal[u] > 0) candidates.push_back(u);
      --internal[candidates[rng.index(candidates.size())]];
    }
    std::vector<NodeId> stubs;
    for (NodeId u : group)
      for (std::int64_t i = 0; i < internal[u]; ++i) stubs.push_back(u);
    unmatched += detail::match_stubs(std::move(stubs), edges, rng, [](NodeId, NodeId) { return true; });
  }
  for (NodeId u = 0; u < n; ++u)
    for (std::int64_t i = internal[u]; i < degree[u]; ++i) external_stubs.push_back(u);
  unmatched += detail::match_stubs(std::move(external_stubs), edges, rng,
                                   [&](NodeId a, NodeId b) { return community[a] != community[b]; });

  // Renumber communities by their lowest member so ids follow node order.
  std::vector<std::uint64_t> labels(n);
  for (NodeId u = 0; u < n; ++u) labels[u] = community[u];
  std::vector<std::uint64_t> rename(k, UINT64_MAX);
  std::uint64_t next = 0;
  for (NodeId u = 0; u < n; ++u)
    if (rename[labels[u]] == UINT64_MAX) rename[labels[u]] = next++;
  for (auto& l : labels) l = rename[l];

  const auto edge_list = edges.edges();
  return {Graph::from_edges(n, edge_list), Partition::from_labels(labels), unmatched};
}

// Fraction of edge endpoints whose edge leaves the endpoint's community.
inline double empirical_mixing(const Graph& g, const Partition& truth) {
  if (g.edge_count() == 0) return 0.0;
  std::size_t crossing = 0;
  for (const Edge& e : g.edges())
    if (truth.community_of(e.first) != truth.community_of(e.second)) ++crossing;
  return static_cast<double>(crossing) / static_cast<double>(g.edge_count());
}

}  // namespace faircd
