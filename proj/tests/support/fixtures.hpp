#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <unistd.h>
#include <string>
#include <utility>
#include <vector>

#include "faircd/faircd.hpp"

namespace fixtures {

using namespace faircd;

// Tests draw their own randomness from std::mt19937_64 so that the library's
// Rng is not exercised by the code that checks it.
using Engine = std::mt19937_64;

inline std::size_t pick(Engine& e, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(e);
}

inline Graph graph(std::size_t n, std::vector<std::pair<NodeId, NodeId>> edges) {
  return Graph::from_pairs(n, edges);
}

inline Graph random_graph(Engine& e, std::size_t n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (coin(e)) edges.emplace_back(u, v);
  return Graph::from_pairs(n, edges);
}

// Random labels over `k` possible communities, compacted so that every id is used.
inline Partition random_partition(Engine& e, std::size_t n, std::size_t k) {
  std::vector<std::uint64_t> labels(n);
  for (auto& l : labels) l = pick(e, 0, k - 1);
  return Partition::from_labels(labels);
}

inline Partition partition(std::vector<std::uint64_t> labels) { return Partition::from_labels(labels); }

inline Graph clique(std::size_t n) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return Graph::from_pairs(n, edges);
}

// Two cliques of sizes a and b, joined by one edge when `bridge`.
inline Graph two_cliques(std::size_t a, std::size_t b, bool bridge) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId u = 0; u < a; ++u)
    for (NodeId v = u + 1; v < a; ++v) edges.emplace_back(u, v);
  for (NodeId u = 0; u < b; ++u)
    for (NodeId v = u + 1; v < b; ++v) edges.emplace_back(static_cast<NodeId>(a + u), static_cast<NodeId>(a + v));
  if (bridge) edges.emplace_back(static_cast<NodeId>(a - 1), static_cast<NodeId>(a));
  return Graph::from_pairs(a + b, edges);
}

inline std::vector<std::uint64_t> block_labels(std::size_t a, std::size_t b) {
  std::vector<std::uint64_t> labels(a + b, 0);
  for (std::size_t i = a; i < a + b; ++i) labels[i] = 1;
  return labels;
}

// Scratch directory removed at scope exit.
class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("faircd-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace fixtures
