#include <gtest/gtest.h>

#include <chrono>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace faircd;

namespace {

ExternalCommand command(std::string text, double timeout = 30) { return {std::move(text), timeout}; }

std::string error_of(const ExternalCommand& cmd, const Graph& g, const Partition* truth = nullptr) {
  try {
    run_external(cmd, g, 5, truth);
  } catch (const ExternalMethodError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(External, CopyingTruthReproducesIt) {
  const auto g = fixtures::two_cliques(4, 4, true);
  const auto truth = fixtures::partition(fixtures::block_labels(4, 4));
  const auto p = run_external(command("cp {truth} {output}"), g, 1, &truth);
  EXPECT_EQ(oracle::grouping(p), oracle::grouping(truth));
}

TEST(External, ReadsTheWrittenEdgeList) {
  // Put every node that appears in the edge file into one community.
  const auto g = fixtures::two_cliques(3, 3, true);
  const auto p = run_external(command("tr ' ' '\\n' < {edges} | sort -u | sed 's/$/\\tall/' > {output}"), g, 1);
  EXPECT_EQ(p.community_count(), 1u);
  EXPECT_EQ(p.node_count(), 6u);
}

TEST(External, NonZeroExitCarriesDiagnostics) {
  const auto msg = error_of(command("echo broken detector >&2; exit 3"), fixtures::clique(3));
  EXPECT_NE(msg.find("status 3"), std::string::npos) << msg;
  EXPECT_NE(msg.find("broken detector"), std::string::npos) << msg;
}

TEST(External, MissingNodeIsNamed) {
  const auto g = fixtures::clique(6);
  const auto truth = fixtures::partition({0, 0, 0, 1, 1, 1});
  const auto msg = error_of(command("grep -v '^5' {truth} > {output}"), g, &truth);
  EXPECT_NE(msg.find("'5'"), std::string::npos) << msg;
  EXPECT_NE(msg.find("missing"), std::string::npos) << msg;
  EXPECT_NE(msg.find("{workdir}"), std::string::npos) << msg;
}

TEST(External, NoOutputFile) {
  EXPECT_NE(error_of(command("true"), fixtures::clique(3)).find("no partition file"), std::string::npos);
}

TEST(External, TruthPlaceholderWithoutTruth) {
  EXPECT_NE(error_of(command("cp {truth} {output}"), fixtures::clique(3)).find("no ground truth"), std::string::npos);
}

TEST(External, TimeoutKillsTheCommand) {
  const auto start = std::chrono::steady_clock::now();
  const auto msg = error_of(command("sleep 20", 0.3), fixtures::clique(3));
  const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_NE(msg.find("timed out"), std::string::npos) << msg;
  EXPECT_LT(elapsed, 5.0);
}

TEST(External, SeedPlaceholderIsSubstituted) {
  const auto g = fixtures::clique(3);
  const auto p = run_external(command("for v in 0 1 2; do printf '%s\\tc{seed}\\n' $v; done > {output}"), g, 77);
  ASSERT_EQ(p.community_count(), 1u);
  EXPECT_EQ(p.name(0), "c77");
}

TEST(External, ScratchDirectoryIsRemoved) {
  const auto g = fixtures::clique(3);
  const auto dir_file = std::filesystem::temp_directory_path() / ("faircd-test-workdir-" + std::to_string(::getpid()));
  run_external(command("echo {workdir} > " + dir_file.string() + "; for v in 0 1 2; do printf '%s\\t0\\n' $v; done > {output}"), g, 1);
  auto dir = fixtures::read_file(dir_file);
  std::filesystem::remove(dir_file);
  while (!dir.empty() && dir.back() == '\n') dir.pop_back();
  EXPECT_FALSE(dir.empty());
  EXPECT_FALSE(std::filesystem::exists(dir));
}

TEST(External, MethodWrapperFlagsTruthUse) {
  const auto g = fixtures::two_cliques(4, 4, true);
  const auto truth = fixtures::partition(fixtures::block_labels(4, 4));
  const auto m = make_method("external", {{"command", "cp {truth} {output}"}, {"deterministic", "true"}}, "oracle");
  EXPECT_TRUE(m.deterministic());
  EXPECT_EQ(m.kind(), MethodKind::external);
  const auto d = m.run({g, &truth, 1});
  EXPECT_TRUE(d.used_truth);
  EXPECT_EQ(oracle::grouping(d.partition), oracle::grouping(truth));
}
