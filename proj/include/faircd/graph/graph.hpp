#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "faircd/core/error.hpp"

namespace faircd {

using NodeId = std::uint32_t;

// Canonical undirected edge, first < second.
struct Edge {
  NodeId first;
  NodeId second;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(NodeId u, NodeId v) noexcept { return u < v ? Edge{u, v} : Edge{v, u}; }

// Counts reported while building a graph from raw pairs.
struct BuildSummary {
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_collapsed = 0;
};

// Undirected simple graph over dense node ids 0..n-1. Immutable once built.
// Each node carries an external label (the id as text when none was given).
class Graph {
 public:
  Graph() = default;

  // Builds from raw pairs; self-loops are dropped and duplicates collapsed.
  static Graph from_pairs(std::size_t node_count, std::span<const std::pair<NodeId, NodeId>> pairs,
                          BuildSummary* summary = nullptr, std::vector<std::string> labels = {}) {
    Graph g;
    g.labels_ = std::move(labels);
    if (g.labels_.empty()) {
      g.labels_.reserve(node_count);
      for (std::size_t i = 0; i < node_count; ++i) g.labels_.push_back(std::to_string(i));
    } else if (g.labels_.size() != node_count) {
      throw std::invalid_argument("Graph: label count does not match node count");
    }
    BuildSummary local;
    g.edges_.reserve(pairs.size());
    for (const auto& [u, v] : pairs) {
      if (u >= node_count || v >= node_count) throw std::out_of_range("Graph: node id out of range");
      if (u == v) {
        ++local.self_loops_dropped;
        continue;
      }
      g.edges_.push_back(make_edge(u, v));
    }
    std::sort(g.edges_.begin(), g.edges_.end());
    const auto last = std::unique(g.edges_.begin(), g.edges_.end());
    local.duplicates_collapsed = static_cast<std::size_t>(g.edges_.end() - last);
    g.edges_.erase(last, g.edges_.end());

    g.offsets_.assign(node_count + 1, 0);
    for (const Edge& e : g.edges_) {
      ++g.offsets_[e.first + 1];
      ++g.offsets_[e.second + 1];
    }
    for (std::size_t i = 0; i < node_count; ++i) g.offsets_[i + 1] += g.offsets_[i];
    g.targets_.resize(2 * g.edges_.size());
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const Edge& e : g.edges_) {
      g.targets_[cursor[e.first]++] = e.second;
      g.targets_[cursor[e.second]++] = e.first;
    }
    // edges_ is sorted, so every neighbor list already comes out sorted.
    g.index_.reserve(node_count);
    for (std::size_t i = 0; i < node_count; ++i) g.index_.emplace(g.labels_[i], static_cast<NodeId>(i));
    if (g.index_.size() != node_count) throw std::invalid_argument("Graph: duplicate node labels");
    if (summary) *summary = local;
    return g;
  }

  static Graph from_edges(std::size_t node_count, std::span<const Edge> edges) {
    std::vector<std::pair<NodeId, NodeId>> pairs;
    pairs.reserve(edges.size());
    for (const Edge& e : edges) pairs.emplace_back(e.first, e.second);
    return from_pairs(node_count, pairs);
  }

  std::size_t node_count() const noexcept { return labels_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }

  std::span<const NodeId> neighbors(NodeId u) const {
    return {targets_.data() + offsets_[u], targets_.data() + offsets_[u + 1]};
  }
  std::size_t degree(NodeId u) const { return offsets_[u + 1] - offsets_[u]; }

  bool has_edge(NodeId u, NodeId v) const {
    if (u >= node_count() || v >= node_count()) return false;
    const auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  const std::string& label(NodeId u) const { return labels_.at(u); }
  std::span<const std::string> labels() const noexcept { return labels_; }
  std::optional<NodeId> find(const std::string& label) const {
    const auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool contains(NodeId u) const noexcept { return u < node_count(); }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> index_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> targets_;
};

}  // namespace faircd
