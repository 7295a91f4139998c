#include <gtest/gtest.h>

#include <map>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace faircd;

namespace {

std::vector<std::int64_t> degrees(const Graph& g) {
  std::vector<std::int64_t> d(g.node_count());
  for (NodeId u = 0; u < g.node_count(); ++u) d[u] = static_cast<std::int64_t>(g.degree(u));
  return d;
}

LfrParams lfr(std::uint64_t seed, double mu = 0.2) {
  LfrParams p;
  p.seed = seed;
  p.mu = mu;
  return p;
}

HomophilicParams homophilic(std::uint64_t seed, double h = 0.9) {
  HomophilicParams p;
  p.seed = seed;
  p.homophily = h;
  return p;
}

}  // namespace

TEST(PowerLaw, MeanMatchesDirectSum) {
  const DiscretePowerLaw law(3, 40, 2.0);
  double z = 0, m = 0;
  for (int k = 3; k <= 40; ++k) {
    z += 1.0 / (k * k);
    m += 1.0 / k;
  }
  EXPECT_NEAR(law.mean(), m / z, 1e-12);
}

TEST(PowerLaw, SamplesStayInRangeAndFollowPmf) {
  const DiscretePowerLaw law(2, 10, 1.5);
  Rng rng(5);
  std::map<std::int64_t, int> counts;
  const int draws = 200000;
  for (int i = 0; i < draws; ++i) {
    const auto k = law.sample(rng);
    ASSERT_GE(k, 2);
    ASSERT_LE(k, 10);
    ++counts[k];
  }
  double z = 0;
  for (int k = 2; k <= 10; ++k) z += std::pow(k, -1.5);
  for (int k = 2; k <= 10; ++k) EXPECT_NEAR(counts[k] / double(draws), std::pow(k, -1.5) / z, 0.005) << k;
}

TEST(PowerLaw, InvalidRangeThrows) {
  EXPECT_THROW(DiscretePowerLaw(0, 5, 2.0), std::invalid_argument);
  EXPECT_THROW(DiscretePowerLaw(6, 5, 2.0), std::invalid_argument);
}

TEST(PowerLaw, LowerCutoffMinimizesMeanGap) {
  const auto lo = lower_cutoff_for_mean(20.0, 50, 2.0);
  const double gap = std::abs(DiscretePowerLaw(lo, 50, 2.0).mean() - 20.0);
  for (std::int64_t other = 1; other <= 50; ++other)
    EXPECT_LE(gap, std::abs(DiscretePowerLaw(other, 50, 2.0).mean() - 20.0) + 1e-12);
}

TEST(PowerLaw, FitRecoversExponentOfIndependentSamples) {
  fixtures::Engine e(11);
  for (double a : {1.5, 2.0, 2.5}) {
    std::vector<double> w;
    for (int k = 5; k <= 60; ++k) w.push_back(std::pow(k, -a));
    std::discrete_distribution<int> dist(w.begin(), w.end());
    std::vector<std::int64_t> s(20000);
    for (auto& x : s) x = 5 + dist(e);
    const auto fit = fit_truncated_power_law(s);
    EXPECT_NEAR(fit.exponent, a, 0.05);
    EXPECT_LT(fit.ks_distance, 0.02);
  }
}

TEST(PowerLaw, FitRejectsDegenerateSamples) {
  EXPECT_THROW(fit_truncated_power_law(std::vector<std::int64_t>{}), std::invalid_argument);
  EXPECT_THROW(fit_truncated_power_law(std::vector<std::int64_t>{4, 4, 4}), std::invalid_argument);
}

TEST(Lfr, CommunitySizesWithinBoundsAndCoverAllNodes) {
  for (std::uint64_t seed : {1, 2, 3}) {
    const auto net = generate_lfr(lfr(seed));
    std::size_t total = 0;
    for (CommunityId c = 0; c < net.truth.community_count(); ++c) {
      const auto size = net.truth.members(c).size();
      EXPECT_GE(size, 20u);
      EXPECT_LE(size, 100u);
      total += size;
    }
    EXPECT_EQ(total, 1000u);
    EXPECT_EQ(net.graph.node_count(), 1000u);
  }
}

TEST(Lfr, MixingNearTarget) {
  const auto net = generate_lfr(lfr(7));
  const double mixing = empirical_mixing(net.graph, net.truth);
  EXPECT_GE(mixing, 0.15);
  EXPECT_LE(mixing, 0.25);
  EXPECT_NEAR(mixing, 0.2, 0.02);
}

TEST(Lfr, MixingMatchesOracleCount) {
  const auto net = generate_lfr(lfr(4));
  const auto edges = oracle::edge_list(net.graph);
  std::int64_t crossing = 0;
  for (auto [u, v] : edges) crossing += net.truth.community_of(u) != net.truth.community_of(v);
  EXPECT_DOUBLE_EQ(empirical_mixing(net.graph, net.truth), double(crossing) / double(edges.size()));
}

TEST(Lfr, AverageDegreeAndTailExponent) {
  const auto net = generate_lfr(lfr(9));
  const auto d = degrees(net.graph);
  const double mean = std::accumulate(d.begin(), d.end(), 0.0) / double(d.size());
  EXPECT_NEAR(mean, 20.0, 2.0);
  EXPECT_LE(*std::max_element(d.begin(), d.end()), 50);
  EXPECT_NEAR(fit_truncated_power_law(d).exponent, 2.0, 0.5);
}

TEST(Lfr, SameSeedSameNetwork) {
  const auto a = generate_lfr(lfr(13));
  const auto b = generate_lfr(lfr(13));
  EXPECT_TRUE(std::equal(a.graph.edges().begin(), a.graph.edges().end(), b.graph.edges().begin(), b.graph.edges().end()));
  EXPECT_TRUE(std::equal(a.truth.assignment().begin(), a.truth.assignment().end(), b.truth.assignment().begin()));
  const auto c = generate_lfr(lfr(14));
  EXPECT_FALSE(std::equal(a.graph.edges().begin(), a.graph.edges().end(), c.graph.edges().begin(), c.graph.edges().end()));
}

TEST(Lfr, LowMixingGivesLowConductance) {
  const auto net = generate_lfr(lfr(21, 0.05));
  const auto edges = oracle::edge_list(net.graph);
  for (const auto& c : oracle::communities(net.truth)) {
    const auto phi = oracle::conductance(edges, c);
    ASSERT_TRUE(phi.has_value());
    EXPECT_LT(phi->value(), 0.2);
  }
}

TEST(Lfr, InvalidParametersThrow) {
  auto bad = [](auto edit) {
    auto p = lfr(1);
    edit(p);
    return p;
  };
  EXPECT_THROW(generate_lfr(bad([](LfrParams& p) { p.mu = 0; })), std::invalid_argument);
  EXPECT_THROW(generate_lfr(bad([](LfrParams& p) { p.mu = 1; })), std::invalid_argument);
  EXPECT_THROW(generate_lfr(bad([](LfrParams& p) { p.tau1 = 1; })), std::invalid_argument);
  EXPECT_THROW(generate_lfr(bad([](LfrParams& p) { p.avg_degree = 60; })), std::invalid_argument);
  EXPECT_THROW(generate_lfr(bad([](LfrParams& p) { p.max_degree = 1000; })), std::invalid_argument);
  EXPECT_THROW(generate_lfr(bad([](LfrParams& p) { p.min_community = 200; })), std::invalid_argument);
}

TEST(Lfr, InfeasibleCombinationsThrow) {
  // Internal degrees up to 45 cannot fit in communities of at most 20 nodes.
  auto p = lfr(1, 0.1);
  p.max_community = 20;
  EXPECT_THROW(generate_lfr(p), InfeasibleError);
  // 30 nodes cannot be split into communities of exactly 20.
  LfrParams q;
  q.n = 30;
  q.avg_degree = 5;
  q.max_degree = 10;
  q.min_community = q.max_community = 20;
  EXPECT_THROW(generate_lfr(q), InfeasibleError);
}

TEST(Homophilic, IntraFractionNearHomophily) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto net = generate_homophilic(homophilic(seed));
    const double intra = intra_fraction(net.graph, net.truth);
    EXPECT_GE(intra, 0.85) << seed;
    EXPECT_LE(intra, 0.95) << seed;
  }
}

TEST(Homophilic, GroupsAndLabels) {
  const auto net = generate_homophilic(homophilic(2));
  ASSERT_EQ(net.truth.community_count(), 2u);
  EXPECT_EQ(net.truth.members(0).size(), 70u);
  EXPECT_EQ(net.truth.members(1).size(), 40u);
  EXPECT_EQ(net.truth.name(0), "majority");
  EXPECT_EQ(net.truth.name(1), "minority");
  for (NodeId u = 0; u < 110; ++u) EXPECT_EQ(net.truth.community_of(u), u < 70 ? 0u : 1u);
}

TEST(Homophilic, FullHomophilyHasNoCrossEdges) {
  const auto net = generate_homophilic(homophilic(3, 1.0));
  EXPECT_EQ(intra_fraction(net.graph, net.truth), 1.0);
}

TEST(Homophilic, ZeroHomophilyMatchesModelExpectation) {
  // Every partner is drawn from the other group, so no edge can be intra.
  HomophilicParams p = homophilic(4, 0.0);
  p.n_major = p.n_minor = 50;
  const auto net = generate_homophilic(p);
  EXPECT_EQ(intra_fraction(net.graph, net.truth), 0.0);
}

TEST(Homophilic, EqualGroupsTrackHomophilyLinearly) {
  // Each edge is intra with probability h independently of everything else,
  // so the expected intra fraction equals h.
  for (double h : {0.25, 0.5, 0.75}) {
    double mean = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      HomophilicParams p = homophilic(seed, h);
      p.n_major = p.n_minor = 55;
      const auto net = generate_homophilic(p);
      mean += intra_fraction(net.graph, net.truth) / 10;
    }
    EXPECT_NEAR(mean, h, 0.03) << h;
  }
}

TEST(Homophilic, IntraFractionMonotoneInHomophily) {
  double previous = -1;
  for (double h : {0.0, 0.2, 0.4, 0.6, 0.8, 1.0}) {
    double mean = 0;
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      const auto net = generate_homophilic(homophilic(seed, h));
      mean += intra_fraction(net.graph, net.truth) / 8;
    }
    EXPECT_GT(mean, previous) << h;
    previous = mean;
  }
}

TEST(Homophilic, EdgeCountNearTarget) {
  for (double h : {0.0, 0.5, 0.9, 1.0}) {
    const auto net = generate_homophilic(homophilic(5, h));
    EXPECT_GE(net.graph.edge_count(), 855u) << h;
    EXPECT_LE(net.graph.edge_count(), 900u) << h;
  }
}

TEST(Homophilic, DeterministicForSeed) {
  const auto a = generate_homophilic(homophilic(6));
  const auto b = generate_homophilic(homophilic(6));
  EXPECT_TRUE(std::equal(a.graph.edges().begin(), a.graph.edges().end(), b.graph.edges().begin(), b.graph.edges().end()));
}

TEST(Homophilic, InvalidParametersThrow) {
  HomophilicParams p;
  p.n_minor = 0;
  EXPECT_THROW(generate_homophilic(p), std::invalid_argument);
  p.homophily = 1.0;
  EXPECT_NO_THROW(generate_homophilic(p));
  HomophilicParams q;
  q.homophily = 1.5;
  EXPECT_THROW(generate_homophilic(q), std::invalid_argument);
  HomophilicParams r;
  r.target_edges = 110 * 109 / 2 + 1;
  EXPECT_THROW(generate_homophilic(r), InfeasibleError);
}

TEST(NodeSwap, ZeroIsIdentity) {
  const auto truth = fixtures::partition(fixtures::block_labels(70, 40));
  const auto swapped = node_swap(truth, 0, 1);
  EXPECT_TRUE(std::equal(truth.assignment().begin(), truth.assignment().end(), swapped.assignment().begin()));
}

TEST(NodeSwap, ChangesExactlyTwoSLabelsAndKeepsSizes) {
  const auto truth = fixtures::partition(fixtures::block_labels(70, 40));
  for (std::size_t s : {1u, 10u, 25u}) {
    const auto swapped = node_swap(truth, s, s);
    std::size_t changed = 0, minor_to_major = 0;
    for (NodeId u = 0; u < 110; ++u) {
      changed += truth.community_of(u) != swapped.community_of(u);
      minor_to_major += u >= 70 && swapped.community_of(u) == 0;
    }
    EXPECT_EQ(changed, 2 * s);
    EXPECT_EQ(minor_to_major, s);
    EXPECT_EQ(swapped.members(1).size(), 40u);
  }
}

TEST(NodeSwap, FullSwapReplacesMinority) {
  const auto truth = fixtures::partition(fixtures::block_labels(70, 40));
  const auto swapped = node_swap(truth, 40, 3);
  for (NodeId u = 70; u < 110; ++u) EXPECT_EQ(swapped.community_of(u), 0u);
  for (auto u : swapped.members(1)) EXPECT_LT(u, 70u);
}

TEST(NodeSwap, FindsMinorityRegardlessOfId) {
  const auto truth = fixtures::partition(fixtures::block_labels(40, 70));
  EXPECT_NO_THROW(node_swap(truth, 40, 1));
  EXPECT_THROW(node_swap(truth, 41, 1), std::invalid_argument);
}

TEST(NodeSwap, RequiresTwoCommunities) {
  const auto truth = fixtures::partition({0, 0, 1, 1, 2, 2});
  EXPECT_THROW(node_swap(truth, 1, 1), std::invalid_argument);
}
