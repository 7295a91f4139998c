#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "faircd/graph/graph.hpp"

namespace faircd {

using CommunityId = std::uint32_t;

// Disjoint cover of nodes 0..n-1 by non-empty communities with dense ids
// 0..k-1. Each community keeps a sorted member list and an external label.
class Partition {
 public:
  Partition() = default;

  // Builds from arbitrary non-negative labels per node. Dense ids follow
  // the numeric order of the labels, so relabeling changes the ids.
  static Partition from_labels(std::span<const std::uint64_t> labels) {
    std::map<std::uint64_t, CommunityId> dense;
    for (auto l : labels) dense.emplace(l, 0);
    std::vector<std::string> names;
    names.reserve(dense.size());
    CommunityId next = 0;
    for (auto& [label, id] : dense) {
      id = next++;
      names.push_back(std::to_string(label));
    }
    std::vector<CommunityId> assignment(labels.size());
    for (std::size_t u = 0; u < labels.size(); ++u) assignment[u] = dense.at(labels[u]);
    return Partition(std::move(assignment), std::move(names));
  }

  // assignment[u] must be a dense id 0..k-1 with every id used.
  explicit Partition(std::vector<CommunityId> assignment, std::vector<std::string> names = {})
      : assignment_(std::move(assignment)), names_(std::move(names)) {
    CommunityId k = 0;
    for (auto c : assignment_) k = std::max(k, c + 1);
    members_.assign(k, {});
    for (std::size_t u = 0; u < assignment_.size(); ++u)
      members_[assignment_[u]].push_back(static_cast<NodeId>(u));
    for (CommunityId c = 0; c < k; ++c)
      if (members_[c].empty())
        throw std::invalid_argument("Partition: community id " + std::to_string(c) + " is empty");
    if (names_.empty()) {
      for (CommunityId c = 0; c < k; ++c) names_.push_back(std::to_string(c));
    } else if (names_.size() != k) {
      throw std::invalid_argument("Partition: community name count mismatch");
    }
  }

  std::size_t node_count() const noexcept { return assignment_.size(); }
  std::size_t community_count() const noexcept { return members_.size(); }

  CommunityId community_of(NodeId u) const { return assignment_.at(u); }
  std::span<const CommunityId> assignment() const noexcept { return assignment_; }

  std::span<const NodeId> members(CommunityId c) const {
    if (c >= members_.size()) throw std::out_of_range("Partition: unknown community id " + std::to_string(c));
    return members_[c];
  }
  const std::string& name(CommunityId c) const { return names_.at(c); }

  std::vector<std::size_t> sizes() const {
    std::vector<std::size_t> out;
    out.reserve(members_.size());
    for (const auto& m : members_) out.push_back(m.size());
    return out;
  }

  // Same node-to-community grouping, ignoring ids.
  bool same_grouping(const Partition& other) const {
    if (other.node_count() != node_count() || other.community_count() != community_count()) return false;
    std::vector<CommunityId> forward(community_count(), UINT32_MAX);
    for (std::size_t u = 0; u < assignment_.size(); ++u) {
      auto& slot = forward[assignment_[u]];
      if (slot == UINT32_MAX) slot = other.assignment_[u];
      else if (slot != other.assignment_[u]) return false;
    }
    return true;
  }

  friend bool operator==(const Partition& a, const Partition& b) { return a.assignment_ == b.assignment_; }

 private:
  std::vector<CommunityId> assignment_;
  std::vector<std::vector<NodeId>> members_;
  std::vector<std::string> names_;
};

inline void require_same_nodes(const Partition& a, const Partition& b) {
  if (a.node_count() != b.node_count())
    throw MismatchError("partitions cover different node sets (" + std::to_string(a.node_count()) + " vs " +
                        std::to_string(b.node_count()) + " nodes)");
}

inline void require_covers(const Graph& g, const Partition& p) {
  if (g.node_count() != p.node_count())
    throw MismatchError("partition covers " + std::to_string(p.node_count()) + " nodes, graph has " +
                        std::to_string(g.node_count()));
}

}  // namespace faircd
