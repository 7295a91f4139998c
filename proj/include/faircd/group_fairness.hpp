#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "faircd/community_metrics.hpp"
#include "faircd/graph/properties.hpp"
#include "faircd/mapping.hpp"

namespace faircd {

enum class Metric { fccn, f1, fcce };
enum class Property { size, density, conductance };

inline constexpr std::array<Metric, 3> all_metrics{Metric::fccn, Metric::f1, Metric::fcce};
inline constexpr std::array<Property, 3> all_properties{Property::size, Property::density, Property::conductance};

constexpr std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::fccn: return "FCCN";
    case Metric::f1: return "F1";
    case Metric::fcce: return "FCCE";
  }
  return "?";
}

constexpr std::string_view to_string(Property p) {
  switch (p) {
    case Property::size: return "size";
    case Property::density: return "density";
    case Property::conductance: return "conductance";
  }
  return "?";
}

struct Normalized {
  std::vector<double> values;
  bool degenerate = false;  // max == min; values are then all 0
};

// Min-max scaling to [0, 1], computed exactly before rounding to double.
inline Normalized minmax_normalize(std::span<const Rational> values) {
  if (values.empty()) throw std::invalid_argument("minmax_normalize: no values");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  Normalized out;
  out.values.reserve(values.size());
  if (*lo == *hi) {
    out.degenerate = true;
    out.values.assign(values.size(), 0.0);
    return out;
  }
  const Rational range = *hi - *lo;
  for (const auto& v : values) out.values.push_back(((v - *lo) / range).to_double());
  return out;
}

struct FairnessPoint {
  double x = 0;  // normalized property
  double y = 0;  // community score
  CommunityId truth = 0;
};

// Ordinary least-squares slope of y on x.
inline double least_squares_slope(std::span<const FairnessPoint> points) {
  if (points.size() < 2) throw std::invalid_argument("least_squares_slope: need at least two points");
  const auto n = static_cast<double>(points.size());
  double mx = 0, my = 0;
  for (const auto& p : points) {
    mx += p.x;
    my += p.y;
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (const auto& p : points) {
    sxx += (p.x - mx) * (p.x - mx);
    sxy += (p.x - mx) * (p.y - my);
  }
  if (sxx == 0) throw std::invalid_argument("least_squares_slope: all x values identical");
  return sxy / sxx;
}

inline double phi_from_slope(double slope) { return 2.0 / std::numbers::pi * std::atan(slope); }

enum class Degeneracy {
  none,
  constant_property,  // every ground-truth community has the same property value
  too_few_points,     // fewer than two usable points
  constant_x,         // usable points all share one x
};

constexpr std::string_view to_string(Degeneracy d) {
  switch (d) {
    case Degeneracy::none: return "";
    case Degeneracy::constant_property: return "constant_property";
    case Degeneracy::too_few_points: return "too_few_points";
    case Degeneracy::constant_x: return "constant_x";
  }
  return "?";
}

struct FairnessCell {
  Metric metric = Metric::fccn;
  Property property = Property::size;
  std::size_t points = 0;
  std::size_t excluded = 0;  // communities with an absent score or property
  std::optional<double> slope;
  std::optional<double> phi;
  Degeneracy degeneracy = Degeneracy::none;

  bool degenerate() const { return degeneracy != Degeneracy::none; }
};

struct FairnessReport {
  std::array<std::array<FairnessCell, 3>, 3> cells{};  // [metric][property]
  Mapping mapping;
  std::vector<CommunityScore> scores;
  std::vector<CommunityProperties> properties;  // ground-truth communities
  std::size_t truth_count = 0;
  std::size_t predicted_count = 0;

  const FairnessCell& cell(Metric m, Property p) const {
    return cells[static_cast<std::size_t>(m)][static_cast<std::size_t>(p)];
  }
  std::size_t unmatched_predicted() const { return mapping.unmatched_predicted.size(); }
};

inline std::optional<Rational> score_value(const CommunityScore& s, Metric m) {
  switch (m) {
    case Metric::fccn: return s.fccn;
    case Metric::f1: return s.f1;
    case Metric::fcce: return s.fcce;
  }
  return std::nullopt;
}

inline std::optional<Rational> property_value(const CommunityProperties& p, Property prop) {
  switch (prop) {
    case Property::size: return Rational(static_cast<std::int64_t>(p.size));
    case Property::density: return p.density;
    case Property::conductance: return p.conductance;
  }
  return std::nullopt;
}

// Fits one (metric, property) cell. Properties are normalized over every
// ground-truth community where they are defined; points with an absent
// score are then dropped.
inline FairnessCell fairness_cell(std::span<const CommunityScore> scores,
                                  std::span<const CommunityProperties> properties, Metric metric, Property property) {
  FairnessCell cell;
  cell.metric = metric;
  cell.property = property;
  std::vector<Rational> raw;
  std::vector<CommunityId> owners;
  for (CommunityId c = 0; c < properties.size(); ++c) {
    if (auto v = property_value(properties[c], property)) {
      raw.push_back(*v);
      owners.push_back(c);
    }
  }
  std::vector<FairnessPoint> points;
  std::size_t excluded = properties.size() - raw.size();
  Normalized norm;
  if (!raw.empty()) norm = minmax_normalize(raw);
  for (std::size_t i = 0; i < owners.size(); ++i) {
    const auto y = score_value(scores[owners[i]], metric);
    if (!y) {
      ++excluded;
      continue;
    }
    points.push_back({norm.values[i], y->to_double(), owners[i]});
  }
  cell.points = points.size();
  cell.excluded = excluded;
  if (norm.degenerate) {
    cell.degeneracy = Degeneracy::constant_property;
  } else if (points.size() < 2) {
    cell.degeneracy = Degeneracy::too_few_points;
  } else if (std::all_of(points.begin(), points.end(), [&](const FairnessPoint& p) { return p.x == points[0].x; })) {
    cell.degeneracy = Degeneracy::constant_x;
  } else {
    cell.slope = least_squares_slope(points);
    cell.phi = phi_from_slope(*cell.slope);
  }
  return cell;
}

// Maps, scores and fits all nine (metric, property) cells for one prediction.
inline FairnessReport fairness_report(const Graph& g, const Partition& truth, const Partition& predicted,
                                      TiePolicy policy = TiePolicy::deterministic, std::uint64_t seed = 0) {
  require_covers(g, truth);
  require_covers(g, predicted);
  FairnessReport report;
  report.mapping = greedy_map(truth, predicted, policy, seed);
  report.scores = score_all(g, truth, predicted, report.mapping);
  report.properties = all_community_properties(g, truth);
  report.truth_count = truth.community_count();
  report.predicted_count = predicted.community_count();
  for (auto m : all_metrics)
    for (auto p : all_properties)
      report.cells[static_cast<std::size_t>(m)][static_cast<std::size_t>(p)] =
          fairness_cell(report.scores, report.properties, m, p);
  return report;
}

}  // namespace faircd
