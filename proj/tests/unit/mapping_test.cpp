#include <gtest/gtest.h>

#include <algorithm>
#include <tuple>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace faircd;

namespace {

std::vector<NodeId> ids(std::initializer_list<NodeId> v) { return v; }

// Checks the structural invariants every mapping must satisfy.
void expect_valid(const Mapping& m, const Partition& truth, const Partition& pred) {
  ASSERT_EQ(m.pairs.size(), truth.community_count());
  std::vector<int> used(pred.community_count(), 0);
  for (CommunityId c = 0; c < m.pairs.size(); ++c) {
    const auto& p = m.pairs[c];
    EXPECT_EQ(p.truth, c);
    if (p.predicted) {
      ++used[*p.predicted];
      EXPECT_EQ(p.similarity, jaccard(truth.members(c), pred.members(*p.predicted)));
    } else {
      EXPECT_EQ(p.similarity, Rational(0));
    }
  }
  for (CommunityId j = 0; j < pred.community_count(); ++j) {
    EXPECT_LE(used[j], 1);
    const bool listed = std::count(m.unmatched_predicted.begin(), m.unmatched_predicted.end(), j) == 1;
    EXPECT_EQ(listed, used[j] == 0);
  }
  // Selected similarities never increase.
  for (std::size_t i = 1; i < m.selection_order.size(); ++i)
    EXPECT_GE(m.pairs[m.selection_order[i - 1]].similarity, m.pairs[m.selection_order[i]].similarity);
}

}  // namespace

TEST(Jaccard, Examples) {
  EXPECT_EQ(jaccard(ids({1, 2, 3}), ids({2, 3, 4})), Rational(1, 2));
  EXPECT_EQ(jaccard(ids({1, 2}), ids({1, 2})), Rational(1));
  EXPECT_EQ(jaccard(ids({1, 2}), ids({3})), Rational(0));
  EXPECT_EQ(jaccard(ids({}), ids({})), Rational(0));
}

TEST(GreedyMap, IdenticalPartitions) {
  const auto p = fixtures::partition({0, 0, 1, 1, 2});
  const auto m = greedy_map(p, p);
  expect_valid(m, p, p);
  for (const auto& pair : m.pairs) {
    EXPECT_EQ(pair.predicted, pair.truth);
    EXPECT_EQ(pair.similarity, Rational(1));
  }
  EXPECT_EQ(m.empty_count(), 0u);
}

TEST(GreedyMap, LeftoverTruthMapsToEmpty) {
  // gt {0,1,2},{3,4}; pred one community.
  const auto truth = fixtures::partition({0, 0, 0, 1, 1});
  const auto pred = fixtures::partition({0, 0, 0, 0, 0});
  const auto m = greedy_map(truth, pred);
  expect_valid(m, truth, pred);
  EXPECT_EQ(m.pairs[0].predicted, std::optional<CommunityId>(0));
  EXPECT_EQ(m.pairs[0].similarity, Rational(3, 5));
  EXPECT_EQ(m.pairs[1].predicted, std::nullopt);
  EXPECT_EQ(m.empty_count(), 1u);
}

TEST(GreedyMap, CountsUnmatchedPredicted) {
  // 3 ground-truth communities, 5 predicted.
  const auto truth = fixtures::partition({0, 0, 0, 0, 1, 1, 1, 1, 2, 2});
  const auto pred = fixtures::partition({0, 0, 1, 1, 2, 2, 3, 3, 4, 4});
  const auto m = greedy_map(truth, pred);
  expect_valid(m, truth, pred);
  EXPECT_EQ(m.empty_count(), 0u);
  EXPECT_EQ(m.unmatched_predicted.size(), 2u);
}

TEST(GreedyMap, ZeroSimilarityPairsFillFreeSlots) {
  // Predicted community 1 overlaps nothing that is still free once the
  // obvious pairs are taken, but both sides still have a free community.
  const auto truth = fixtures::partition({0, 0, 1, 1});
  const auto pred = fixtures::partition({0, 0, 0, 1});
  const auto m = greedy_map(truth, pred);
  expect_valid(m, truth, pred);
  EXPECT_EQ(m.empty_count(), 0u);
}

TEST(GreedyMap, MismatchedNodeSets) {
  EXPECT_THROW(greedy_map(fixtures::partition({0, 1}), fixtures::partition({0, 1, 2})), MismatchError);
}

TEST(GreedyMap, MatchesBruteForceOracle) {
  fixtures::Engine e(31);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = fixtures::pick(e, 1, 60);
    const auto truth = fixtures::random_partition(e, n, fixtures::pick(e, 1, 12));
    const auto pred = fixtures::random_partition(e, n, fixtures::pick(e, 1, 12));
    const auto m = greedy_map(truth, pred);
    expect_valid(m, truth, pred);
    const auto expected = oracle::greedy_map(oracle::communities(truth), oracle::communities(pred));
    for (CommunityId c = 0; c < truth.community_count(); ++c)
      ASSERT_EQ(m.pairs[c].predicted, expected[c]) << "trial " << trial << " community " << c;
  }
}

TEST(GreedyMap, RelabelingKeepsSimilarityTriples) {
  fixtures::Engine e(32);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = fixtures::pick(e, 5, 40);
    const std::size_t k1 = fixtures::pick(e, 1, 8), k2 = fixtures::pick(e, 1, 8);
    std::vector<std::uint64_t> a(n), b(n);
    for (auto& x : a) x = fixtures::pick(e, 0, k1 - 1);
    for (auto& x : b) x = fixtures::pick(e, 0, k2 - 1);
    // Reverse the label order, which reverses the dense ids.
    auto ra = a, rb = b;
    for (auto& x : ra) x = 100 - x;
    for (auto& x : rb) x = 100 - x;
    auto triples = [](const Partition& t, const Partition& p) {
      std::vector<std::tuple<Rational, std::size_t, std::size_t>> out;
      for (const auto& pair : greedy_map(t, p).pairs)
        out.emplace_back(pair.similarity, t.members(pair.truth).size(),
                         pair.predicted ? p.members(*pair.predicted).size() : 0);
      std::sort(out.begin(), out.end());
      return out;
    };
    // Distinct similarities make the greedy outcome independent of ids.
    const auto ta = fixtures::partition(a), tb = fixtures::partition(b);
    std::vector<Rational> sims;
    for (const auto& o : overlaps(ta, tb))
      sims.push_back(jaccard(ta.members(o.truth), tb.members(o.predicted)));
    std::sort(sims.begin(), sims.end());
    if (std::adjacent_find(sims.begin(), sims.end()) != sims.end()) continue;
    if (ta.community_count() != tb.community_count()) continue;  // avoid zero-similarity ties
    EXPECT_EQ(triples(ta, tb), triples(fixtures::partition(ra), fixtures::partition(rb)));
    ++checked;
  }
  EXPECT_GE(checked, 10);
}

TEST(GreedyMap, RandomTiesAreSeededAndUniform) {
  // All four pairs tie at 1/3.
  const auto truth = fixtures::partition({0, 0, 1, 1});
  const auto pred = fixtures::partition({0, 1, 0, 1});
  const auto det = greedy_map(truth, pred);
  EXPECT_EQ(det.pairs[0].predicted, std::optional<CommunityId>(0));
  int straight = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const auto m = greedy_map(truth, pred, TiePolicy::random, seed);
    expect_valid(m, truth, pred);
    const auto again = greedy_map(truth, pred, TiePolicy::random, seed);
    EXPECT_EQ(m.pairs[0].predicted, again.pairs[0].predicted);
    straight += m.pairs[0].predicted == std::optional<CommunityId>(0);
  }
  EXPECT_GT(straight, 140);
  EXPECT_LT(straight, 260);
}

TEST(GreedyMap, RandomPolicyStillValidOnRandomInputs) {
  fixtures::Engine e(33);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = fixtures::pick(e, 1, 40);
    const auto truth = fixtures::random_partition(e, n, fixtures::pick(e, 1, 6));
    const auto pred = fixtures::random_partition(e, n, fixtures::pick(e, 1, 6));
    expect_valid(greedy_map(truth, pred, TiePolicy::random, trial), truth, pred);
  }
}
