#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace faircd;

namespace {

std::vector<Rational> rationals(std::initializer_list<std::int64_t> v) { return {v.begin(), v.end()}; }

std::vector<FairnessPoint> points(std::initializer_list<std::pair<double, double>> xy) {
  std::vector<FairnessPoint> out;
  for (auto [x, y] : xy) out.push_back({x, y, 0});
  return out;
}

}  // namespace

TEST(MinmaxNormalize, Examples) {
  const auto n = minmax_normalize(rationals({10, 20, 30}));
  EXPECT_FALSE(n.degenerate);
  EXPECT_EQ(n.values, (std::vector<double>{0, 0.5, 1}));
  EXPECT_TRUE(minmax_normalize(rationals({5, 5, 5})).degenerate);
  EXPECT_THROW(minmax_normalize(std::vector<Rational>{}), std::invalid_argument);
}

TEST(MinmaxNormalize, FootballSizeRange) {
  // Sizes between 5 and 13: a size-9 community lands in the middle.
  const auto n = minmax_normalize(rationals({5, 9, 13}));
  EXPECT_EQ(n.values[1], 0.5);
}

TEST(LeastSquaresSlope, Examples) {
  EXPECT_DOUBLE_EQ(least_squares_slope(points({{0, 0}, {0.5, 0.5}, {1, 1}})), 1.0);
  EXPECT_DOUBLE_EQ(least_squares_slope(points({{0, 0.3}, {1, 0.3}})), 0.0);
  EXPECT_NEAR(least_squares_slope(points({{0, 0.2}, {1, 0.9}})), 0.7, 1e-15);
  EXPECT_THROW(least_squares_slope(points({{0, 1}})), std::invalid_argument);
  EXPECT_THROW(least_squares_slope(points({{0.5, 1}, {0.5, 0}})), std::invalid_argument);
}

TEST(LeastSquaresSlope, MatchesClosedForm) {
  fixtures::Engine e(51);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<FairnessPoint> pts;
    std::vector<std::pair<double, double>> raw;
    const std::size_t n = fixtures::pick(e, 2, 40);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = i == 0 ? 0 : (i == 1 ? 1 : u(e)), y = u(e);
      pts.push_back({x, y, 0});
      raw.emplace_back(x, y);
    }
    EXPECT_NEAR(least_squares_slope(pts), oracle::ols_slope(raw), 1e-9);
  }
}

TEST(PhiFromSlope, Examples) {
  EXPECT_NEAR(phi_from_slope(0.70), 0.3888, 0.0005);
  EXPECT_EQ(phi_from_slope(0), 0.0);
  EXPECT_DOUBLE_EQ(phi_from_slope(-1), -0.5);
}

TEST(PhiFromSlope, OddStrictlyIncreasingAndBounded) {
  double prev = -1;
  for (double s = -50; s <= 50; s += 0.25) {
    const double phi = phi_from_slope(s);
    EXPECT_GT(phi, prev);
    EXPECT_GT(phi, -1);
    EXPECT_LT(phi, 1);
    EXPECT_DOUBLE_EQ(phi_from_slope(-s), -phi);
    EXPECT_EQ(phi == 0, s == 0);
    prev = phi;
  }
}

TEST(FairnessCell, TwoCommunityExample) {
  // Sizes 40 and 70 with FCCN 0.5 and 1: min-max puts them at x=0 and x=1.
  std::vector<CommunityScore> scores = {{0, 0, Rational(1, 2), Rational(1, 2), std::nullopt},
                                        {1, 1, Rational(1), Rational(1), std::nullopt}};
  std::vector<CommunityProperties> props = {{40, std::nullopt, std::nullopt}, {70, std::nullopt, std::nullopt}};
  const auto cell = fairness_cell(scores, props, Metric::fccn, Property::size);
  ASSERT_TRUE(cell.slope);
  EXPECT_DOUBLE_EQ(*cell.slope, 0.5);
  EXPECT_NEAR(*cell.phi, 0.295, 0.0005);
  // FCCE is absent for both, density undefined for both.
  EXPECT_EQ(fairness_cell(scores, props, Metric::fcce, Property::size).degeneracy, Degeneracy::too_few_points);
  const auto dens = fairness_cell(scores, props, Metric::fccn, Property::density);
  EXPECT_TRUE(dens.degenerate());
  EXPECT_FALSE(dens.phi);
  EXPECT_EQ(dens.excluded, 2u);
}

TEST(FairnessCell, ConstantPropertyIsFlaggedNotZero) {
  std::vector<CommunityScore> scores = {{0, 0, Rational(1, 2), Rational(1, 2), std::nullopt},
                                        {1, 1, Rational(1), Rational(1), std::nullopt}};
  std::vector<CommunityProperties> props = {{5, std::nullopt, std::nullopt}, {5, std::nullopt, std::nullopt}};
  const auto cell = fairness_cell(scores, props, Metric::fccn, Property::size);
  EXPECT_EQ(cell.degeneracy, Degeneracy::constant_property);
  EXPECT_FALSE(cell.phi);
}

TEST(FairnessReport, PerfectPredictionIsExactlyFair) {
  fixtures::Engine e(52);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = fixtures::pick(e, 4, 50);
    const auto g = fixtures::random_graph(e, n, 0.2);
    const auto p = fixtures::random_partition(e, n, fixtures::pick(e, 2, 6));
    const auto r = fairness_report(g, p, p);
    for (auto m : all_metrics)
      for (auto prop : all_properties) {
        const auto& c = r.cell(m, prop);
        if (c.phi) {
          EXPECT_EQ(*c.phi, 0.0);
        } else {
          EXPECT_TRUE(c.degenerate());
        }
      }
  }
}

TEST(FairnessReport, SignOfPhiFollowsSlope) {
  fixtures::Engine e(53);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = fixtures::pick(e, 6, 50);
    const auto g = fixtures::random_graph(e, n, 0.3);
    const auto truth = fixtures::random_partition(e, n, fixtures::pick(e, 2, 6));
    const auto pred = fixtures::random_partition(e, n, fixtures::pick(e, 1, 6));
    const auto r = fairness_report(g, truth, pred);
    EXPECT_EQ(r.truth_count, truth.community_count());
    EXPECT_EQ(r.predicted_count, pred.community_count());
    for (const auto& row : r.cells)
      for (const auto& c : row) {
        EXPECT_EQ(c.phi.has_value(), c.slope.has_value());
        if (!c.phi) continue;
        EXPECT_DOUBLE_EQ(*c.phi, 2 / std::numbers::pi * std::atan(*c.slope));
        EXPECT_EQ(*c.phi > 0, *c.slope > 0);
        EXPECT_EQ(*c.phi < 0, *c.slope < 0);
        EXPECT_EQ(c.points + c.excluded, truth.community_count());
      }
  }
}

TEST(FairnessReport, MatchesIndependentRegression) {
  // Rebuild the size/FCCN cell from oracle scores and the closed-form slope.
  fixtures::Engine e(54);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = fixtures::pick(e, 6, 50);
    const auto g = fixtures::random_graph(e, n, 0.3);
    const auto truth = fixtures::random_partition(e, n, fixtures::pick(e, 2, 6));
    const auto pred = fixtures::random_partition(e, n, fixtures::pick(e, 1, 6));
    const auto r = fairness_report(g, truth, pred);
    const auto gt = oracle::communities(truth), pr = oracle::communities(pred);
    const auto mapped = oracle::greedy_map(gt, pr);
    std::size_t lo = n, hi = 0;
    for (const auto& c : gt) {
      lo = std::min(lo, c.size());
      hi = std::max(hi, c.size());
    }
    const auto& cell = r.cell(Metric::fccn, Property::size);
    if (lo == hi) {
      EXPECT_EQ(cell.degeneracy, Degeneracy::constant_property);
      continue;
    }
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < gt.size(); ++i) {
      const double x = static_cast<double>(gt[i].size() - lo) / static_cast<double>(hi - lo);
      const auto y = mapped[i] ? oracle::fccn(gt[i], pr[*mapped[i]]).value() : 0.0;
      pts.emplace_back(x, y);
    }
    ASSERT_TRUE(cell.phi);
    EXPECT_NEAR(*cell.phi, phi_from_slope(oracle::ols_slope(pts)), 1e-9);
  }
}

TEST(FairnessReport, ScaleInvarianceOfProperty) {
  // Scaling every raw size by a constant leaves the normalized x unchanged.
  std::vector<CommunityScore> scores = {{0, 0, Rational(1, 3), Rational(1, 3), std::nullopt},
                                        {1, 1, Rational(1, 2), Rational(1, 2), std::nullopt},
                                        {2, 2, Rational(1), Rational(1), std::nullopt}};
  std::vector<CommunityProperties> a = {{3, std::nullopt, std::nullopt},
                                        {7, std::nullopt, std::nullopt},
                                        {20, std::nullopt, std::nullopt}};
  auto b = a;
  for (auto& p : b) p.size *= 13;
  EXPECT_EQ(*fairness_cell(scores, a, Metric::f1, Property::size).phi,
            *fairness_cell(scores, b, Metric::f1, Property::size).phi);
}

TEST(FairnessReport, SwapNetworkHasZeroPhiWithoutSwaps) {
  HomophilicParams p;
  p.seed = 3;
  const auto net = generate_homophilic(p);
  const auto r = fairness_report(net.graph, net.truth, node_swap(net.truth, 0, 1));
  EXPECT_EQ(*r.cell(Metric::fccn, Property::size).phi, 0.0);
}

TEST(FairnessReport, EdgelessCommunityExcludedFromFcce) {
  // Community {4} is a singleton: no internal edges, no density.
  const auto g = fixtures::graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  const auto truth = fixtures::partition({0, 0, 1, 1, 2});
  const auto pred = fixtures::partition({0, 0, 0, 1, 1});
  const auto r = fairness_report(g, truth, pred);
  EXPECT_EQ(r.cell(Metric::fcce, Property::size).excluded, 1u);
  EXPECT_EQ(r.cell(Metric::fccn, Property::density).excluded, 1u);
  EXPECT_EQ(r.cell(Metric::fccn, Property::size).excluded, 0u);
}
