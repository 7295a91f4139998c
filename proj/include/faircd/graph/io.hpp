#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "faircd/graph/graph.hpp"
#include "faircd/graph/partition.hpp"

namespace faircd {

struct LoadedGraph {
  Graph graph;
  BuildSummary summary;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline bool skippable(std::string_view line) { return line.empty() || line.front() == '#' || line.front() == '%'; }

inline std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return in;
}

}  // namespace detail

// One edge per line: two whitespace-separated labels. A line with a single
// label declares an isolated node. '#' and '%' start comment lines. Labels
// get dense ids in order of first appearance.
inline LoadedGraph load_edge_list(const std::filesystem::path& path) {
  auto in = detail::open_for_read(path);
  std::unordered_map<std::string, NodeId> ids;
  std::vector<std::string> labels;
  std::vector<std::pair<NodeId, NodeId>> pairs;
  auto intern = [&](const std::string& label) {
    auto [it, inserted] = ids.emplace(label, static_cast<NodeId>(labels.size()));
    if (inserted) labels.push_back(label);
    return it->second;
  };
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto body = detail::trim(line);
    if (detail::skippable(body)) continue;
    std::istringstream fields{std::string(body)};
    std::string a, b, extra;
    if (!(fields >> a)) throw ParseError(path.string(), lineno, "expected two node labels");
    if (!(fields >> b)) {
      intern(a);  // a lone label declares an isolated node
      continue;
    }
    // A third numeric column (weight) is tolerated and ignored.
    if (fields >> extra && fields >> extra) throw ParseError(path.string(), lineno, "too many fields");
    const NodeId u = intern(a);
    const NodeId v = intern(b);
    pairs.emplace_back(u, v);
  }
  LoadedGraph out;
  const std::size_t n = labels.size();
  out.graph = Graph::from_pairs(n, pairs, &out.summary, std::move(labels));
  return out;
}

inline void save_edge_list(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (const Edge& e : g.edges()) out << g.label(e.first) << ' ' << g.label(e.second) << '\n';
  for (NodeId u = 0; u < g.node_count(); ++u)
    if (g.degree(u) == 0) out << g.label(u) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

// "node<TAB>community" per line (any whitespace accepted). Every graph node
// must appear exactly once. Community labels get dense ids in order of first
// appearance in the file.
inline Partition load_partition(const std::filesystem::path& path, const Graph& g) {
  auto in = detail::open_for_read(path);
  constexpr CommunityId unset = UINT32_MAX;
  std::vector<CommunityId> assignment(g.node_count(), unset);
  std::unordered_map<std::string, CommunityId> ids;
  std::vector<std::string> names;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto body = detail::trim(line);
    if (detail::skippable(body)) continue;
    std::istringstream fields{std::string(body)};
    std::string node, community, extra;
    if (!(fields >> node >> community)) throw ParseError(path.string(), lineno, "expected node and community");
    if (fields >> extra) throw ParseError(path.string(), lineno, "too many fields");
    const auto u = g.find(node);
    if (!u) throw ParseError(path.string(), lineno, "unknown node label '" + node + "'");
    if (assignment[*u] != unset) throw ParseError(path.string(), lineno, "node '" + node + "' listed twice");
    auto [it, inserted] = ids.emplace(community, static_cast<CommunityId>(names.size()));
    if (inserted) names.push_back(community);
    assignment[*u] = it->second;
  }
  for (NodeId u = 0; u < assignment.size(); ++u)
    if (assignment[u] == unset) throw ParseError(path.string() + ": node '" + g.label(u) + "' missing from partition");
  return Partition(std::move(assignment), std::move(names));
}

inline void save_partition(const Graph& g, const Partition& p, const std::filesystem::path& path) {
  require_covers(g, p);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (NodeId u = 0; u < g.node_count(); ++u) out << g.label(u) << '\t' << p.name(p.community_of(u)) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace faircd
