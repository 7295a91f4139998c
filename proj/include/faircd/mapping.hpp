#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "faircd/core/random.hpp"
#include "faircd/core/rational.hpp"
#include "faircd/graph/partition.hpp"

namespace faircd {

inline Rational jaccard(std::span<const NodeId> a, std::span<const NodeId> b) {
  // Both inputs sorted and duplicate-free.
  std::size_t i = 0, j = 0, common = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) ++i;
    else if (b[j] < a[i]) ++j;
    else ++common, ++i, ++j;
  }
  const auto uni = static_cast<std::int64_t>(a.size() + b.size() - common);
  if (uni == 0) return Rational(0);
  return Rational(static_cast<std::int64_t>(common), uni);
}

enum class TiePolicy {
  // Lowest ground-truth id, then lowest predicted id.
  deterministic,
  // Uniform over all tied pairs, drawn from the seed.
  random,
};

struct MappedPair {
  CommunityId truth = 0;
  std::optional<CommunityId> predicted;  // nullopt: mapped to the empty set
  Rational similarity;
};

struct Mapping {
  // Indexed by ground-truth id.
  std::vector<MappedPair> pairs;
  // Ground-truth ids in the order their pairs were chosen (empty-set pairs last).
  std::vector<CommunityId> selection_order;
  std::vector<CommunityId> unmatched_predicted;

  std::size_t empty_count() const {
    return static_cast<std::size_t>(
        std::count_if(pairs.begin(), pairs.end(), [](const MappedPair& p) { return !p.predicted; }));
  }
};

// Overlap counts |c_i ∩ p_j| for every pair with a non-empty intersection,
// sorted by (i, j).
struct Overlap {
  CommunityId truth;
  CommunityId predicted;
  std::int64_t count;
};

inline std::vector<Overlap> overlaps(const Partition& truth, const Partition& predicted) {
  require_same_nodes(truth, predicted);
  const std::uint64_t k = predicted.community_count();
  std::vector<std::uint64_t> keys(truth.node_count());
  for (NodeId u = 0; u < truth.node_count(); ++u)
    keys[u] = static_cast<std::uint64_t>(truth.community_of(u)) * k + predicted.community_of(u);
  std::sort(keys.begin(), keys.end());
  std::vector<Overlap> out;
  for (std::size_t i = 0; i < keys.size();) {
    std::size_t j = i;
    while (j < keys.size() && keys[j] == keys[i]) ++j;
    out.push_back({static_cast<CommunityId>(keys[i] / k), static_cast<CommunityId>(keys[i] % k),
                   static_cast<std::int64_t>(j - i)});
    i = j;
  }
  return out;
}

// Repeatedly pairs the globally most similar (ground truth, predicted)
// communities that are both still free, until one side runs out. Pairs with
// zero similarity are still made while both sides have free communities;
// leftover ground-truth communities map to the empty set.
inline Mapping greedy_map(const Partition& truth, const Partition& predicted,
                          TiePolicy policy = TiePolicy::deterministic, std::uint64_t seed = 0) {
  const auto overlap = overlaps(truth, predicted);
  const std::size_t m = truth.community_count();
  const std::size_t k = predicted.community_count();

  struct Candidate {
    Rational similarity;
    CommunityId truth;
    CommunityId predicted;
  };
  std::vector<Candidate> candidates;
  candidates.reserve(overlap.size());
  for (const auto& o : overlap) {
    const auto a = static_cast<std::int64_t>(truth.members(o.truth).size());
    const auto b = static_cast<std::int64_t>(predicted.members(o.predicted).size());
    candidates.push_back({Rational(o.count, a + b - o.count), o.truth, o.predicted});
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& x, const Candidate& y) {
    if (x.similarity != y.similarity) return x.similarity > y.similarity;
    if (x.truth != y.truth) return x.truth < y.truth;
    return x.predicted < y.predicted;
  });

  Rng rng(seed);
  if (policy == TiePolicy::random) {
    // Scanning a uniformly shuffled tie group and taking the first free pair
    // is the same as drawing uniformly among the free tied pairs.
    for (std::size_t i = 0; i < candidates.size();) {
      std::size_t j = i;
      while (j < candidates.size() && candidates[j].similarity == candidates[i].similarity) ++j;
      rng.shuffle(candidates.begin() + static_cast<std::ptrdiff_t>(i), candidates.begin() + static_cast<std::ptrdiff_t>(j));
      i = j;
    }
  }

  Mapping out;
  out.pairs.resize(m);
  for (CommunityId c = 0; c < m; ++c) out.pairs[c].truth = c;
  std::vector<char> truth_used(m, 0), pred_used(k, 0);
  for (const auto& cand : candidates) {
    if (truth_used[cand.truth] || pred_used[cand.predicted]) continue;
    truth_used[cand.truth] = pred_used[cand.predicted] = 1;
    out.pairs[cand.truth].predicted = cand.predicted;
    out.pairs[cand.truth].similarity = cand.similarity;
    out.selection_order.push_back(cand.truth);
  }

  // Every remaining pair has similarity 0.
  std::vector<CommunityId> free_truth, free_pred;
  for (CommunityId c = 0; c < m; ++c)
    if (!truth_used[c]) free_truth.push_back(c);
  for (CommunityId c = 0; c < k; ++c)
    if (!pred_used[c]) free_pred.push_back(c);
  if (policy == TiePolicy::random) {
    rng.shuffle(free_truth);
    rng.shuffle(free_pred);
  }
  const std::size_t zero_pairs = std::min(free_truth.size(), free_pred.size());
  for (std::size_t i = 0; i < zero_pairs; ++i) {
    out.pairs[free_truth[i]].predicted = free_pred[i];
    out.pairs[free_truth[i]].similarity = Rational(0);
    out.selection_order.push_back(free_truth[i]);
  }
  std::vector<CommunityId> empty_mapped(free_truth.begin() + static_cast<std::ptrdiff_t>(zero_pairs), free_truth.end());
  std::sort(empty_mapped.begin(), empty_mapped.end());
  for (auto c : empty_mapped) out.selection_order.push_back(c);
  out.unmatched_predicted.assign(free_pred.begin() + static_cast<std::ptrdiff_t>(zero_pairs), free_pred.end());
  std::sort(out.unmatched_predicted.begin(), out.unmatched_predicted.end());
  return out;
}

}  // namespace faircd
