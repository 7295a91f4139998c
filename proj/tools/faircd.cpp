// Command-line front end: synthesis, mapping, scoring, fairness, quality,
// detection, benchmarks and the node-swap experiment.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>

#include <CLI11.hpp>

#include "faircd/faircd.hpp"

namespace fs = std::filesystem;
using namespace faircd;
using bench::format_exact;
using bench::format_optional;
using bench::write_csv_row;

namespace {

// Output sink: a file when --out is given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (path.empty() || path == "-") return;
    if (fs::path(path).has_parent_path()) fs::create_directories(fs::path(path).parent_path());
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw std::runtime_error("cannot write " + path);
  }
  std::ostream& out() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::optional<double> as_double(const std::optional<Rational>& r) {
  if (!r) return std::nullopt;
  return r->to_double();
}

struct PairInputs {
  std::string edges, truth, pred, out;
  std::uint64_t seed = 0;
  std::string ties = "deterministic";
};

void add_pair_options(CLI::App* cmd, PairInputs& in, bool with_pred = true) {
  cmd->add_option("--edges", in.edges, "edge list file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--truth", in.truth, "ground-truth partition file")->required()->check(CLI::ExistingFile);
  if (with_pred)
    cmd->add_option("--pred", in.pred, "predicted partition file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--seed", in.seed, "seed for the random tie policy");
  cmd->add_option("--out", in.out, "output file (default: stdout)");
}

void add_tie_option(CLI::App* cmd, PairInputs& in) {
  cmd->add_option("--ties", in.ties, "mapping tie policy")->check(CLI::IsMember({"deterministic", "random"}));
}

struct Loaded {
  Graph graph;
  Partition truth, pred;
};

Loaded load_pair(const PairInputs& in) {
  auto g = load_edge_list(in.edges);
  if (g.summary.self_loops_dropped || g.summary.duplicates_collapsed)
    std::cerr << "note: dropped " << g.summary.self_loops_dropped << " self-loops, collapsed "
              << g.summary.duplicates_collapsed << " duplicate edges\n";
  Loaded l{std::move(g.graph), {}, {}};
  l.truth = load_partition(in.truth, l.graph);
  if (!in.pred.empty()) l.pred = load_partition(in.pred, l.graph);
  return l;
}

TiePolicy tie_policy(const std::string& s) { return s == "random" ? TiePolicy::random : TiePolicy::deterministic; }

void write_network(const SyntheticNetwork& net, const std::string& dir) {
  if (dir.empty()) throw std::invalid_argument("synth needs --out DIR");
  fs::create_directories(dir);
  save_edge_list(net.graph, fs::path(dir) / "edges.txt");
  save_partition(net.graph, net.truth, fs::path(dir) / "truth.tsv");
  std::cout << "nodes " << net.graph.node_count() << ", edges " << net.graph.edge_count() << ", communities "
            << net.truth.community_count() << ", mixing " << bench::format_fixed(empirical_mixing(net.graph, net.truth), 4);
  if (net.unmatched_stubs) std::cout << ", unmatched stubs " << net.unmatched_stubs;
  std::cout << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fairness evaluation for community detection"};
  app.require_subcommand(1);

  // synth
  auto* synth = app.add_subcommand("synth", "generate a synthetic network with ground truth");
  synth->require_subcommand(1);
  LfrParams lfr;
  std::string lfr_out;
  auto* synth_lfr = synth->add_subcommand("lfr", "LFR benchmark graph");
  synth_lfr->add_option("--n", lfr.n)->capture_default_str();
  synth_lfr->add_option("--mu", lfr.mu)->capture_default_str();
  synth_lfr->add_option("--tau1", lfr.tau1, "degree exponent")->capture_default_str();
  synth_lfr->add_option("--tau2", lfr.tau2, "community-size exponent")->capture_default_str();
  synth_lfr->add_option("--avg-degree", lfr.avg_degree)->capture_default_str();
  synth_lfr->add_option("--max-degree", lfr.max_degree)->capture_default_str();
  synth_lfr->add_option("--min-community", lfr.min_community)->capture_default_str();
  synth_lfr->add_option("--max-community", lfr.max_community)->capture_default_str();
  synth_lfr->add_option("--seed", lfr.seed);
  synth_lfr->add_option("--out", lfr_out, "output directory (edges.txt, truth.tsv)")->required();
  HomophilicParams hom;
  std::string hom_out;
  auto* synth_hom = synth->add_subcommand("homophilic", "two-group homophilic preferential-attachment graph");
  synth_hom->add_option("--n-major", hom.n_major)->capture_default_str();
  synth_hom->add_option("--n-minor", hom.n_minor)->capture_default_str();
  synth_hom->add_option("--homophily", hom.homophily)->capture_default_str();
  synth_hom->add_option("--edges", hom.target_edges, "target edge count")->capture_default_str();
  synth_hom->add_option("--seed", hom.seed);
  synth_hom->add_option("--out", hom_out, "output directory (edges.txt, truth.tsv)")->required();

  PairInputs map_in, score_in, fair_in, qual_in;
  auto* map_cmd = app.add_subcommand("map", "greedy Jaccard mapping of ground-truth to predicted communities");
  add_pair_options(map_cmd, map_in);
  add_tie_option(map_cmd, map_in);
  auto* score_cmd = app.add_subcommand("score", "per-community FCCN, F1 and FCCE with community properties");
  add_pair_options(score_cmd, score_in);
  add_tie_option(score_cmd, score_in);
  auto* fair_cmd = app.add_subcommand("fairness", "group fairness for every metric and property");
  add_pair_options(fair_cmd, fair_in);
  add_tie_option(fair_cmd, fair_in);
  auto* qual_cmd = app.add_subcommand("quality", "NMI, ARI, NF1 and RMI between two partitions");
  add_pair_options(qual_cmd, qual_in);
  std::string nmi_norm = "arithmetic";
  qual_cmd->add_option("--nmi-normalization", nmi_norm)->check(CLI::IsMember({"arithmetic", "max"}));

  // detect
  PairInputs det_in;
  std::string algorithm;
  std::vector<std::string> det_params;
  auto* det_cmd = app.add_subcommand("detect", "run a community detection method");
  det_cmd->add_option("--edges", det_in.edges)->required()->check(CLI::ExistingFile);
  det_cmd->add_option("--truth", det_in.truth, "ground truth (needed by fluid with k=truth)")->check(CLI::ExistingFile);
  det_cmd->add_option("--method", algorithm)->required()->check(CLI::IsMember(builtin_algorithms()));
  det_cmd->add_option("--param", det_params, "method parameter key=value (repeatable)");
  det_cmd->add_option("--seed", det_in.seed);
  det_cmd->add_option("--out", det_in.out, "partition file (default: stdout)");

  // bench
  std::string config_path, bench_out;
  std::optional<std::uint64_t> bench_seed;
  std::optional<unsigned> bench_threads;
  auto* bench_cmd = app.add_subcommand("bench", "run a benchmark described by a JSON config");
  bench_cmd->add_option("--config", config_path)->required()->check(CLI::ExistingFile);
  bench_cmd->add_option("--seed", bench_seed, "override the config seed");
  bench_cmd->add_option("--out", bench_out, "override the output directory");
  bench_cmd->add_option("--threads", bench_threads, "worker threads (0: all cores)");

  // swap-exp
  HomophilicParams swap_params;
  std::size_t s_min = 0, s_max = 40, iterations = 20;
  std::string swap_out, swap_ties = "deterministic";
  auto* swap_cmd = app.add_subcommand("swap-exp", "node-swap experiment on a homophilic two-group network");
  swap_cmd->add_option("--n-major", swap_params.n_major)->capture_default_str();
  swap_cmd->add_option("--n-minor", swap_params.n_minor)->capture_default_str();
  swap_cmd->add_option("--homophily", swap_params.homophily)->capture_default_str();
  swap_cmd->add_option("--edges", swap_params.target_edges, "target edge count")->capture_default_str();
  swap_cmd->add_option("--swap-min", s_min)->capture_default_str();
  swap_cmd->add_option("--swap-max", s_max)->capture_default_str();
  swap_cmd->add_option("--iterations", iterations)->capture_default_str();
  swap_cmd->add_option("--ties", swap_ties)->check(CLI::IsMember({"deterministic", "random"}));
  swap_cmd->add_option("--seed", swap_params.seed);
  swap_cmd->add_option("--out", swap_out, "CSV file (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth_lfr->parsed()) {
      write_network(generate_lfr(lfr), lfr_out);
    } else if (synth_hom->parsed()) {
      write_network(generate_homophilic(hom), hom_out);
    } else if (map_cmd->parsed()) {
      const auto l = load_pair(map_in);
      const auto m = greedy_map(l.truth, l.pred, tie_policy(map_in.ties), map_in.seed);
      Sink sink(map_in.out);
      write_csv_row(sink.out(), {"gt_id", "pred_id", "jaccard"});
      for (const auto& p : m.pairs)
        write_csv_row(sink.out(), {l.truth.name(p.truth), p.predicted ? l.pred.name(*p.predicted) : "EMPTY",
                                   format_exact(p.similarity.to_double())});
    } else if (score_cmd->parsed()) {
      const auto l = load_pair(score_in);
      const auto report = fairness_report(l.graph, l.truth, l.pred, tie_policy(score_in.ties), score_in.seed);
      Sink sink(score_in.out);
      write_csv_row(sink.out(), {"gt_id", "pred_id", "size", "density", "conductance", "fccn", "f1", "fcce"});
      for (const auto& s : report.scores) {
        const auto& prop = report.properties[s.truth];
        write_csv_row(sink.out(), {l.truth.name(s.truth), s.predicted ? l.pred.name(*s.predicted) : "EMPTY",
                                   std::to_string(prop.size), format_optional(as_double(prop.density)),
                                   format_optional(as_double(prop.conductance)), format_exact(s.fccn.to_double()),
                                   format_exact(s.f1.to_double()), format_optional(as_double(s.fcce))});
      }
    } else if (fair_cmd->parsed()) {
      const auto l = load_pair(fair_in);
      const auto report = fairness_report(l.graph, l.truth, l.pred, tie_policy(fair_in.ties), fair_in.seed);
      Sink sink(fair_in.out);
      write_csv_row(sink.out(), {"metric", "property", "n_points", "slope", "phi", "degenerate"});
      for (auto m : all_metrics)
        for (auto p : all_properties) {
          const auto& c = report.cell(m, p);
          write_csv_row(sink.out(), {std::string(to_string(m)), std::string(to_string(p)), std::to_string(c.points),
                                     c.slope ? bench::format_fixed(*c.slope, 4) : "",
                                     c.phi ? bench::format_fixed(*c.phi, 4) : "", std::string(to_string(c.degeneracy))});
        }
    } else if (qual_cmd->parsed()) {
      const auto l = load_pair(qual_in);
      const auto q = quality_scores(l.truth, l.pred,
                                    nmi_norm == "max" ? NmiNormalization::max : NmiNormalization::arithmetic);
      Sink sink(qual_in.out);
      write_csv_row(sink.out(), {"nmi", "ari", "nf1", "rmi", "nrmi"});
      write_csv_row(sink.out(), {format_exact(q.nmi), format_exact(q.ari), format_exact(q.nf1), format_exact(q.rmi),
                                 format_exact(q.nrmi)});
    } else if (det_cmd->parsed()) {
      auto g = load_edge_list(det_in.edges);
      std::optional<Partition> truth;
      if (!det_in.truth.empty()) truth = load_partition(det_in.truth, g.graph);
      MethodParams params;
      for (const auto& kv : det_params) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("--param expects key=value, got '" + kv + "'");
        params[kv.substr(0, eq)] = kv.substr(eq + 1);
      }
      const auto method = make_method(algorithm, params);
      const auto d = method.run({g.graph, truth ? &*truth : nullptr, det_in.seed});
      for (const auto& w : d.warnings) std::cerr << "warning: " << w << '\n';
      if (det_in.out.empty() || det_in.out == "-") {
        for (NodeId u = 0; u < g.graph.node_count(); ++u)
          std::cout << g.graph.label(u) << '\t' << d.partition.name(d.partition.community_of(u)) << '\n';
      } else {
        save_partition(g.graph, d.partition, det_in.out);
      }
    } else if (bench_cmd->parsed()) {
      auto config = bench::ExperimentConfig::load(config_path);
      if (bench_seed) config.seed = *bench_seed;
      if (bench_threads) config.threads = *bench_threads;
      if (!bench_out.empty()) config.output = bench_out;
      if (config.output.empty()) throw std::invalid_argument("no output directory (set \"output\" or pass --out)");
      const auto result = bench::run_experiment(config);
      bench::write_outputs(config, result, config.output);
      std::size_t failed = 0;
      for (const auto& c : result.cells) failed += !c.ok;
      std::cout << result.cells.size() << " cells, " << failed << " failed, results in " << config.output.string()
                << '\n';
      for (const auto& c : result.cells)
        if (!c.ok)
          std::cerr << "failed: " << c.network_id << " #" << c.instance << " " << c.method_name << " rep "
                    << c.repetition << ": " << c.error << '\n';
    } else if (swap_cmd->parsed()) {
      const auto r = bench::node_swap_experiment(swap_params, s_min, s_max, iterations, tie_policy(swap_ties));
      Sink sink(swap_out);
      bench::write_swap_csv(sink.out(), r);
      if (!swap_out.empty()) {
        if (r.crossover)
          std::cout << "crossover at " << *r.crossover << " swaps (fraction "
                    << bench::format_fixed(*r.crossover_fraction(), 3) << ")\n";
        else
          std::cout << "no crossover in range\n";
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
