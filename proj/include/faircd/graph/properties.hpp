#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "faircd/core/rational.hpp"
#include "faircd/graph/graph.hpp"
#include "faircd/graph/partition.hpp"

namespace faircd {

// A community given as a sorted list of distinct node ids.
using NodeSet = std::span<const NodeId>;

// Structural properties of one community. density is absent below two
// nodes, conductance when the community volume is zero.
struct CommunityProperties {
  std::size_t size = 0;
  std::optional<Rational> density;
  std::optional<Rational> conductance;
};

namespace detail {

inline void check_node_set(const Graph& g, NodeSet nodes) {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!g.contains(nodes[i])) throw std::out_of_range("node " + std::to_string(nodes[i]) + " is outside the graph");
    if (i > 0 && nodes[i] <= nodes[i - 1]) throw std::invalid_argument("node set must be sorted and duplicate-free");
  }
}

// Dense membership flags for one node set.
class MembershipMask {
 public:
  MembershipMask(std::size_t n, NodeSet nodes) : mask_(n, 0) {
    for (NodeId u : nodes) mask_[u] = 1;
  }
  bool operator[](NodeId u) const { return mask_[u] != 0; }

 private:
  std::vector<char> mask_;
};

}  // namespace detail

inline std::size_t community_size(const Partition& p, CommunityId c) { return p.members(c).size(); }

// Intra-community edges in canonical (min, max) order, sorted.
inline std::vector<Edge> internal_edges(const Graph& g, NodeSet community) {
  detail::check_node_set(g, community);
  const detail::MembershipMask in(g.node_count(), community);
  std::vector<Edge> out;
  for (NodeId u : community)
    for (NodeId v : g.neighbors(u))
      if (v > u && in[v]) out.push_back({u, v});
  return out;
}

inline std::size_t internal_edge_count(const Graph& g, NodeSet community) {
  return internal_edges(g, community).size();
}

inline std::optional<Rational> density(const Graph& g, NodeSet community) {
  detail::check_node_set(g, community);
  const auto n = static_cast<std::int64_t>(community.size());
  if (n < 2) return std::nullopt;
  const auto inside = static_cast<std::int64_t>(internal_edge_count(g, community));
  return Rational(2 * inside, n * (n - 1));
}

inline std::optional<Rational> conductance(const Graph& g, NodeSet community) {
  detail::check_node_set(g, community);
  const detail::MembershipMask in(g.node_count(), community);
  std::int64_t volume = 0;
  std::int64_t cut = 0;
  for (NodeId u : community) {
    volume += static_cast<std::int64_t>(g.degree(u));
    for (NodeId v : g.neighbors(u))
      if (!in[v]) ++cut;
  }
  if (volume == 0) return std::nullopt;
  return Rational(cut, volume);
}

inline CommunityProperties community_properties(const Graph& g, NodeSet community) {
  return {community.size(), density(g, community), conductance(g, community)};
}

// Properties of every community of p, in community id order, using one
// pass over the edge list.
inline std::vector<CommunityProperties> all_community_properties(const Graph& g, const Partition& p) {
  require_covers(g, p);
  const std::size_t k = p.community_count();
  std::vector<std::int64_t> inside(k, 0), volume(k, 0), cut(k, 0);
  for (const Edge& e : g.edges()) {
    const auto a = p.community_of(e.first);
    const auto b = p.community_of(e.second);
    ++volume[a];
    ++volume[b];
    if (a == b) {
      ++inside[a];
    } else {
      ++cut[a];
      ++cut[b];
    }
  }
  std::vector<CommunityProperties> out(k);
  for (CommunityId c = 0; c < k; ++c) {
    const auto n = static_cast<std::int64_t>(p.members(c).size());
    out[c].size = static_cast<std::size_t>(n);
    if (n >= 2) out[c].density = Rational(2 * inside[c], n * (n - 1));
    if (volume[c] > 0) out[c].conductance = Rational(cut[c], volume[c]);
  }
  return out;
}

}  // namespace faircd
