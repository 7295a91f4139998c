#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "faircd/cd/modularity.hpp"
#include "faircd/core/random.hpp"

namespace faircd {

struct LabelPropagationResult {
  Partition partition;
  int rounds = 0;
  bool converged = false;
};

// Asynchronous label propagation. Every round visits nodes in a fresh
// seeded order; a node keeps its label when it is among the most frequent
// labels of its neighbors and otherwise adopts one of those labels at
// random. Stops after a round without changes, or after max_rounds.
inline LabelPropagationResult label_propagation_run(const Graph& g, std::uint64_t seed, int max_rounds = 100) {
  const std::size_t n = g.node_count();
  if (n == 0) throw std::invalid_argument("label_propagation: empty graph");
  Rng rng(seed);
  std::vector<std::uint32_t> label(n);
  std::iota(label.begin(), label.end(), 0u);
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  std::vector<std::uint32_t> count(n, 0);
  std::vector<std::uint32_t> seen, best;

  LabelPropagationResult out;
  for (out.rounds = 1; out.rounds <= max_rounds; ++out.rounds) {
    rng.shuffle(order);
    bool changed = false;
    for (NodeId u : order) {
      const auto nb = g.neighbors(u);
      if (nb.empty()) continue;
      seen.clear();
      std::uint32_t top = 0;
      for (NodeId v : nb) {
        if (count[label[v]]++ == 0) seen.push_back(label[v]);
        top = std::max(top, count[label[v]]);
      }
      best.clear();
      for (auto l : seen)
        if (count[l] == top) best.push_back(l);
      const bool keeps = count[label[u]] == top;
      for (auto l : seen) count[l] = 0;
      if (keeps) continue;
      std::sort(best.begin(), best.end());
      label[u] = best[rng.index(best.size())];
      changed = true;
    }
    if (!changed) {
      out.converged = true;
      break;
    }
  }
  out.rounds = std::min(out.rounds, max_rounds);
  out.partition = compact_partition(label);
  return out;
}

inline Partition label_propagation(const Graph& g, std::uint64_t seed) {
  return label_propagation_run(g, seed).partition;
}

}  // namespace faircd
