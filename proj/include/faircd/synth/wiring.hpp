#pragma once

#include <algorithm>
#include <cstdint>
#include <unordered_set>
#include <vector>

#include "faircd/core/random.hpp"
#include "faircd/graph/graph.hpp"

namespace faircd::detail {

inline std::uint64_t edge_key(NodeId u, NodeId v) {
  const Edge e = make_edge(u, v);
  return (static_cast<std::uint64_t>(e.first) << 32) | e.second;
}

// Simple-graph edge set shared by the stub-matching passes of one generator.
class EdgeSet {
 public:
  bool contains(NodeId u, NodeId v) const { return keys_.count(edge_key(u, v)) != 0; }
  bool insert(NodeId u, NodeId v) { return u != v && keys_.insert(edge_key(u, v)).second; }
  std::size_t size() const { return keys_.size(); }
  // Sorted, so independent of hash iteration order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(keys_.size());
    for (auto key : keys_) out.push_back({static_cast<NodeId>(key >> 32), static_cast<NodeId>(key & 0xffffffffu)});
    std::sort(out.begin(), out.end());
    return out;
  }
  void erase(NodeId u, NodeId v) { keys_.erase(edge_key(u, v)); }

 private:
  std::unordered_set<std::uint64_t> keys_;
};

// Configuration-model matching of a stub list. Pairs that would form a
// self-loop, a multi-edge or a disallowed edge are re-matched for a bounded
// number of passes, then repaired by double-edge swaps against edges made
// by this call. Returns the number of stubs left unmatched.
template <typename Allowed>
std::size_t match_stubs(std::vector<NodeId> stubs, EdgeSet& edges, Rng& rng, Allowed allowed, int passes = 20,
                        int swap_attempts = 50) {
  std::vector<Edge> made;
  auto try_add = [&](NodeId a, NodeId b) {
    if (a == b || !allowed(a, b) || edges.contains(a, b)) return false;
    edges.insert(a, b);
    made.push_back(make_edge(a, b));
    return true;
  };
  for (int pass = 0; pass < passes && stubs.size() >= 2; ++pass) {
    rng.shuffle(stubs);
    std::vector<NodeId> leftover;
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2)
      if (!try_add(stubs[i], stubs[i + 1])) {
        leftover.push_back(stubs[i]);
        leftover.push_back(stubs[i + 1]);
      }
    if (stubs.size() % 2 == 1) leftover.push_back(stubs.back());
    if (leftover.size() == stubs.size()) {
      stubs = std::move(leftover);
      break;
    }
    stubs = std::move(leftover);
  }

  // Swap repair: stub pair (a, b) and edge (c, d) become (a, c) and (b, d).
  std::size_t unmatched = stubs.size() % 2;
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
    const NodeId a = stubs[i], b = stubs[i + 1];
    bool fixed = false;
    for (int attempt = 0; attempt < swap_attempts && !made.empty() && !fixed; ++attempt) {
      const auto idx = static_cast<std::size_t>(rng.index(made.size()));
      Edge e = made[idx];
      if (!edges.contains(e.first, e.second)) {
        made[idx] = made.back();
        made.pop_back();
        continue;
      }
      NodeId c = e.first, d = e.second;
      if (rng.bernoulli(0.5)) std::swap(c, d);
      const bool ok = a != c && b != d && !(a == d && b == c) && allowed(a, c) && allowed(b, d) &&
                      !edges.contains(a, c) && !edges.contains(b, d) && make_edge(a, c) != make_edge(b, d);
      if (!ok) continue;
      edges.erase(c, d);
      made[idx] = made.back();
      made.pop_back();
      edges.insert(a, c);
      edges.insert(b, d);
      made.push_back(make_edge(a, c));
      made.push_back(make_edge(b, d));
      fixed = true;
    }
    if (!fixed) unmatched += 2;
  }
  return unmatched;
}

}  // namespace faircd::detail
