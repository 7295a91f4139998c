#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "faircd/core/rational.hpp"
#include "faircd/graph/properties.hpp"
#include "faircd/mapping.hpp"

namespace faircd {

// Per-community scores of one ground-truth community against the predicted
// community it was mapped to. Kept exact; converted to double only when fit.
struct CommunityScore {
  CommunityId truth = 0;
  std::optional<CommunityId> predicted;
  Rational fccn;
  Rational f1;
  std::optional<Rational> fcce;  // absent when the community has no internal edges
};

namespace detail {

inline std::size_t intersection_size(NodeSet a, NodeSet b) {
  std::size_t i = 0, j = 0, common = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) ++i;
    else if (b[j] < a[i]) ++j;
    else ++common, ++i, ++j;
  }
  return common;
}

inline std::vector<NodeId> intersection(NodeSet a, NodeSet b) {
  std::vector<NodeId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline void require_nonempty(NodeSet c) {
  if (c.empty()) throw std::invalid_argument("ground-truth community is empty");
}

}  // namespace detail

// Fraction of the ground-truth nodes found in the predicted community.
inline Rational fccn(NodeSet truth, NodeSet predicted) {
  detail::require_nonempty(truth);
  return {static_cast<std::int64_t>(detail::intersection_size(truth, predicted)),
          static_cast<std::int64_t>(truth.size())};
}

inline Rational f1(NodeSet truth, NodeSet predicted) {
  detail::require_nonempty(truth);
  return {2 * static_cast<std::int64_t>(detail::intersection_size(truth, predicted)),
          static_cast<std::int64_t>(truth.size() + predicted.size())};
}

// Fraction of the ground-truth internal edges that are also internal to the
// predicted community. An edge is in both iff both endpoints are in both.
inline std::optional<Rational> fcce(const Graph& g, NodeSet truth, NodeSet predicted) {
  detail::require_nonempty(truth);
  const auto total = internal_edge_count(g, truth);
  detail::check_node_set(g, predicted);
  if (total == 0) return std::nullopt;
  const auto common = detail::intersection(truth, predicted);
  return Rational(static_cast<std::int64_t>(internal_edge_count(g, common)), static_cast<std::int64_t>(total));
}

// One score per ground-truth community, in ground-truth id order. Node and
// edge counts come from a single pass over nodes and edges.
inline std::vector<CommunityScore> score_all(const Graph& g, const Partition& truth, const Partition& predicted,
                                          const Mapping& mapping) {
  require_covers(g, truth);
  require_covers(g, predicted);
  const std::size_t m = truth.community_count();
  if (mapping.pairs.size() != m) throw MismatchError("mapping does not cover every ground-truth community");
  constexpr CommunityId none = UINT32_MAX;
  std::vector<CommunityId> target(m, none);
  for (const auto& pair : mapping.pairs) {
    if (pair.truth >= m) throw MismatchError("mapping names an unknown ground-truth community");
    if (pair.predicted) {
      if (*pair.predicted >= predicted.community_count())
        throw MismatchError("mapping names an unknown predicted community");
      target[pair.truth] = *pair.predicted;
    }
  }

  std::vector<std::int64_t> common_nodes(m, 0), truth_edges(m, 0), common_edges(m, 0);
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const auto c = truth.community_of(u);
    if (predicted.community_of(u) == target[c]) ++common_nodes[c];
  }
  for (const Edge& e : g.edges()) {
    const auto c = truth.community_of(e.first);
    if (c != truth.community_of(e.second)) continue;
    ++truth_edges[c];
    if (predicted.community_of(e.first) == target[c] && predicted.community_of(e.second) == target[c])
      ++common_edges[c];
  }

  std::vector<CommunityScore> out(m);
  for (CommunityId c = 0; c < m; ++c) {
    auto& s = out[c];
    s.truth = c;
    const auto size_c = static_cast<std::int64_t>(truth.members(c).size());
    const auto size_p =
        target[c] == none ? std::int64_t{0} : static_cast<std::int64_t>(predicted.members(target[c]).size());
    if (target[c] != none) s.predicted = target[c];
    s.fccn = Rational(common_nodes[c], size_c);
    s.f1 = Rational(2 * common_nodes[c], size_c + size_p);
    if (truth_edges[c] > 0) s.fcce = Rational(common_edges[c], truth_edges[c]);
  }
  return out;
}

}  // namespace faircd
