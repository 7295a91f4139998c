#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "faircd/bench/csv.hpp"
#include "faircd/bench/runner.hpp"

namespace faircd::bench {

// One marker: a method's mean fairness (horizontal) and mean quality
// (vertical), with whiskers of one standard deviation each way.
struct ScatterPoint {
  std::string label;
  std::optional<double> phi, phi_std;
  std::optional<double> quality, quality_std;
};

struct ScatterLayout {
  double width = 760, height = 520;
  double left = 70, right = 220, top = 30, bottom = 60;
  double y_min = 0, y_max = 1;

  double plot_width() const { return width - left - right; }
  double plot_height() const { return height - top - bottom; }
  double x_scale() const { return plot_width() / 2.0; }  // pixels per unit of phi
  double y_scale() const { return plot_height() / (y_max - y_min); }
  double px(double phi) const { return left + (phi + 1.0) * x_scale(); }
  double py(double q) const { return top + (y_max - q) * y_scale(); }
};

namespace detail {

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string color(std::size_t i) {
  static const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
                                  "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  if (i < std::size(palette)) return palette[i];
  // Golden-angle hue steps keep later colors apart.
  std::ostringstream s;
  s << "hsl(" << std::fmod(static_cast<double>(i) * 137.508, 360.0) << ",65%,45%)";
  return s.str();
}

inline std::string num(double v) { return format_fixed(v, 3); }

}  // namespace detail

// Quality range [0, 1], widened when a marker or whisker falls outside it
// (RMI is not bounded by 1).
inline ScatterLayout layout_for(const std::vector<ScatterPoint>& points) {
  ScatterLayout l;
  for (const auto& p : points) {
    if (!p.quality) continue;
    const double s = p.quality_std.value_or(0);
    l.y_min = std::min(l.y_min, std::floor((*p.quality - s) * 10) / 10);
    l.y_max = std::max(l.y_max, std::ceil((*p.quality + s) * 10) / 10);
  }
  return l;
}

inline std::string scatter_svg(const std::vector<ScatterPoint>& points, const std::string& phi_label,
                               const std::string& quality_label) {
  using detail::num;
  const auto l = layout_for(points);
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << l.width << "\" height=\"" << l.height
    << "\" viewBox=\"0 0 " << l.width << ' ' << l.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<g class=\"axes\" stroke=\"#444\" fill=\"none\">\n";
  o << "<rect x=\"" << num(l.left) << "\" y=\"" << num(l.top) << "\" width=\"" << num(l.plot_width())
    << "\" height=\"" << num(l.plot_height()) << "\"/>\n";
  o << "<line class=\"fair-line\" stroke-dasharray=\"4 3\" x1=\"" << num(l.px(0)) << "\" y1=\"" << num(l.top)
    << "\" x2=\"" << num(l.px(0)) << "\" y2=\"" << num(l.top + l.plot_height()) << "\"/>\n";
  o << "</g>\n<g class=\"ticks\" fill=\"#222\">\n";
  for (int i = -4; i <= 4; ++i) {
    const double v = i / 4.0;
    o << "<text x=\"" << num(l.px(v)) << "\" y=\"" << num(l.top + l.plot_height() + 16)
      << "\" text-anchor=\"middle\">" << format_fixed(v, 2) << "</text>\n";
  }
  const int y_steps = static_cast<int>(std::lround((l.y_max - l.y_min) * 5));
  for (int i = 0; i <= y_steps; ++i) {
    const double v = l.y_min + i * 0.2;
    o << "<text x=\"" << num(l.left - 6) << "\" y=\"" << num(l.py(v) + 4) << "\" text-anchor=\"end\">"
      << format_fixed(v, 1) << "</text>\n";
  }
  o << "</g>\n";
  o << "<text class=\"x-label\" x=\"" << num(l.left + l.plot_width() / 2) << "\" y=\"" << num(l.height - 16)
    << "\" text-anchor=\"middle\">" << detail::xml_escape(phi_label) << "</text>\n";
  o << "<text class=\"y-label\" transform=\"translate(18," << num(l.top + l.plot_height() / 2)
    << ") rotate(-90)\" text-anchor=\"middle\">" << detail::xml_escape(quality_label) << "</text>\n";

  o << "<g class=\"markers\">\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    if (!p.phi || !p.quality) continue;
    const double x = l.px(*p.phi), y = l.py(*p.quality);
    const double sx = p.phi_std.value_or(0), sy = p.quality_std.value_or(0);
    const auto c = detail::color(i);
    o << "<g class=\"method\" data-method=\"" << detail::xml_escape(p.label) << "\">\n";
    o << "<line class=\"whisker-x\" data-std=\"" << format_exact(sx) << "\" x1=\"" << num(x - sx * l.x_scale())
      << "\" y1=\"" << num(y) << "\" x2=\"" << num(x + sx * l.x_scale()) << "\" y2=\"" << num(y) << "\" stroke=\""
      << c << "\"/>\n";
    o << "<line class=\"whisker-y\" data-std=\"" << format_exact(sy) << "\" x1=\"" << num(x) << "\" y1=\""
      << num(y - sy * l.y_scale()) << "\" x2=\"" << num(x) << "\" y2=\"" << num(y + sy * l.y_scale())
      << "\" stroke=\"" << c << "\"/>\n";
    o << "<circle class=\"marker\" cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"4\" fill=\"" << c
      << "\"/>\n</g>\n";
  }
  o << "</g>\n<g class=\"legend\">\n";
  const double lx = l.left + l.plot_width() + 16;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double ly = l.top + 8 + static_cast<double>(i) * 16;
    o << "<g class=\"legend-entry\"><circle cx=\"" << num(lx) << "\" cy=\"" << num(ly) << "\" r=\"4\" fill=\""
      << detail::color(i) << "\"/><text x=\"" << num(lx + 10) << "\" y=\"" << num(ly + 4) << "\">"
      << detail::xml_escape(points[i].label) << "</text></g>\n";
  }
  o << "</g>\n</svg>\n";
  return o.str();
}

// Writes the SVG at `path` and the plotted values next to it (same stem, .csv).
inline void emit_scatter(const std::vector<ScatterPoint>& points, const std::string& phi_label,
                         const std::string& quality_label, const std::filesystem::path& path) {
  if (points.empty()) throw std::invalid_argument("emit_scatter: nothing to plot");
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream svg(path);
  if (!svg) throw std::runtime_error("cannot write " + path.string());
  svg << scatter_svg(points, phi_label, quality_label);
  auto sidecar_path = path;
  sidecar_path.replace_extension(".csv");
  std::ofstream csv(sidecar_path);
  if (!csv) throw std::runtime_error("cannot write " + sidecar_path.string());
  write_csv_row(csv, {"method", "phi_mean", "phi_std", "quality_mean", "quality_std"});
  for (const auto& p : points)
    write_csv_row(csv, {p.label, format_optional(p.phi), format_optional(p.phi_std), format_optional(p.quality),
                        format_optional(p.quality_std)});
  if (!svg || !csv) throw std::runtime_error("write failed for " + path.string());
}

inline std::vector<ScatterPoint> scatter_points(const std::vector<ResultRow>& rows, const std::string& network,
                                                const ScatterSpec& spec) {
  std::vector<ScatterPoint> out;
  for (const auto& r : rows) {
    if (r.network_id != network) continue;
    const auto& phi = r.phi_cell(spec.metric, spec.property);
    const auto& q = r.quality(spec.quality);
    out.push_back({r.method_name, phi.mean, phi.pooled, q.mean, q.pooled});
  }
  return out;
}

inline std::string scatter_file_name(const std::string& network, const ScatterSpec& spec) {
  std::string name = "scatter_" + network + "_" + spec.quality + "_" + cell_suffix(spec.metric, spec.property);
  for (char& c : name)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.')) c = '_';
  return name + ".svg";
}

// Writes cells.csv, aggregate.csv, timings.csv and one SVG per scatter
// request and network setting into the output directory.
inline void write_outputs(const ExperimentConfig& config, const ExperimentResult& result,
                          const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto open = [&dir](const char* name) {
    std::ofstream f(dir / name);
    if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
    return f;
  };
  {
    auto f = open("cells.csv");
    write_long_form(f, result.cells);
  }
  {
    auto f = open("aggregate.csv");
    write_aggregate(f, result.rows);
  }
  {
    auto f = open("timings.csv");
    write_timings(f, result.cells);
  }
  for (const auto& spec : config.scatter) {
    for (const auto& net : config.networks) {
      const std::string phi_label =
          "Phi_" + std::string(to_string(spec.property)) + "^" + std::string(to_string(spec.metric));
      emit_scatter(scatter_points(result.rows, net.id, spec), phi_label + " (" + net.id + ")", spec.quality,
                   dir / scatter_file_name(net.id, spec));
    }
  }
}

}  // namespace faircd::bench
