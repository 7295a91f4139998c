#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "faircd/bench/config.hpp"
#include "faircd/bench/csv.hpp"
#include "faircd/bench/stats.hpp"
#include "faircd/graph/io.hpp"

namespace faircd::bench {

struct NetworkInstance {
  std::size_t network = 0;  // index into ExperimentConfig::networks
  std::size_t instance = 0;
  std::string id;
  Graph graph;
  Partition truth;
};

inline constexpr std::size_t cell_count = 9;  // metric x property

inline std::size_t cell_index(Metric m, Property p) {
  return static_cast<std::size_t>(m) * 3 + static_cast<std::size_t>(p);
}

struct CellResult {
  std::size_t network = 0;
  std::size_t instance = 0;
  std::size_t method = 0;
  std::size_t repetition = 0;
  std::string network_id;
  std::string method_name;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  bool used_truth = false;
  std::vector<std::string> warnings;
  std::size_t truth_communities = 0;
  std::size_t predicted_communities = 0;
  std::size_t unmatched_predicted = 0;
  QualityScores quality;
  std::array<FairnessCell, cell_count> cells{};
  double wall_ms = 0;
};

// Mean and spread of one value across the cells of a (network, method) pair.
// `pooled` treats every cell alike; `networks` is the spread of per-instance
// means; `runs` is the mean within-instance spread.
struct Spread {
  std::optional<double> mean;
  std::optional<double> pooled;
  std::optional<double> networks;
  std::optional<double> runs;
  std::size_t count = 0;
};

struct ResultRow {
  std::string network_id;
  std::string method_name;
  std::size_t cells = 0;
  std::size_t failed = 0;
  bool used_truth = false;
  Spread nmi, ari, nf1, rmi, nrmi;
  std::array<Spread, cell_count> phi{};
  std::array<std::size_t, cell_count> degenerate{};
  double wall_ms_mean = 0;

  const Spread& phi_cell(Metric m, Property p) const { return phi[cell_index(m, p)]; }
  const Spread& quality(const std::string& name) const;
};

struct ExperimentResult {
  std::vector<CellResult> cells;  // ordered by (network, method, instance, repetition)
  std::vector<ResultRow> rows;    // ordered by (network, method)
};

inline const Spread& ResultRow::quality(const std::string& name) const {
  if (name == "nmi") return nmi;
  if (name == "ari") return ari;
  if (name == "nf1") return nf1;
  if (name == "rmi") return rmi;
  if (name == "nrmi") return nrmi;
  throw std::invalid_argument("unknown quality metric '" + name + "'");
}

inline std::vector<NetworkInstance> build_networks(const ExperimentConfig& config) {
  std::vector<NetworkInstance> out;
  for (std::size_t i = 0; i < config.networks.size(); ++i) {
    const auto& spec = config.networks[i];
    for (std::size_t inst = 0; inst < spec.instances; ++inst) {
      const std::uint64_t seed = derive_seed(config.seed, "network", i, inst);
      switch (spec.source) {
        case NetworkSource::lfr: {
          auto p = spec.lfr;
          p.seed = seed;
          auto net = generate_lfr(p);
          out.push_back({i, inst, spec.id, std::move(net.graph), std::move(net.truth)});
          break;
        }
        case NetworkSource::homophilic: {
          auto p = spec.homophilic;
          p.seed = seed;
          auto net = generate_homophilic(p);
          out.push_back({i, inst, spec.id, std::move(net.graph), std::move(net.truth)});
          break;
        }
        case NetworkSource::files: {
          auto loaded = load_edge_list(spec.edges);
          auto truth = load_partition(spec.partition, loaded.graph);
          out.push_back({i, inst, spec.id, std::move(loaded.graph), std::move(truth)});
          break;
        }
      }
    }
  }
  return out;
}

// One detect -> fairness -> quality evaluation. Exceptions become a failed cell.
inline CellResult run_cell(const NetworkInstance& net, const CdMethod& method, const ExperimentConfig& config,
                           CellResult cell) {
  const auto start = std::chrono::steady_clock::now();
  try {
    auto detection = method.run({net.graph, &net.truth, cell.seed});
    cell.used_truth = detection.used_truth;
    cell.warnings = std::move(detection.warnings);
    const auto report =
        fairness_report(net.graph, net.truth, detection.partition, config.tie_policy, derive_seed(cell.seed, "ties"));
    for (auto m : all_metrics)
      for (auto p : all_properties) cell.cells[cell_index(m, p)] = report.cell(m, p);
    cell.truth_communities = report.truth_count;
    cell.predicted_communities = report.predicted_count;
    cell.unmatched_predicted = report.unmatched_predicted();
    cell.quality = quality_scores(net.truth, detection.partition, config.nmi);
    cell.ok = true;
  } catch (const std::exception& e) {
    cell.ok = false;
    cell.error = e.what();
  }
  cell.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return cell;
}

namespace detail {

// Groups values by instance so both spread variants can be computed.
class GroupedSummary {
 public:
  void add(std::size_t instance, double v) {
    all_.add(v);
    by_instance_[instance].add(v);
  }
  Spread spread() const {
    Spread s;
    s.count = all_.count();
    if (all_.empty()) return s;
    s.mean = all_.mean();
    s.pooled = all_.stddev();
    Summary means, within;
    for (const auto& [_, group] : by_instance_) {
      means.add(*group.mean());
      within.add(*group.stddev());
    }
    s.networks = means.stddev();
    s.runs = within.mean();
    return s;
  }

 private:
  Summary all_;
  std::map<std::size_t, Summary> by_instance_;
};

template <typename Fn>
void parallel_for(std::size_t jobs, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(jobs, 1)));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < jobs;) fn(i);
  };
  if (threads <= 1) {
    worker();
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

}  // namespace detail

inline std::vector<ResultRow> aggregate(const std::vector<CellResult>& cells) {
  std::vector<ResultRow> rows;
  std::size_t i = 0;
  while (i < cells.size()) {
    std::size_t j = i;
    while (j < cells.size() && cells[j].network == cells[i].network && cells[j].method == cells[i].method) ++j;
    ResultRow row;
    row.network_id = cells[i].network_id;
    row.method_name = cells[i].method_name;
    detail::GroupedSummary q[5];
    std::array<detail::GroupedSummary, cell_count> phi;
    double wall = 0;
    for (std::size_t k = i; k < j; ++k) {
      const auto& c = cells[k];
      ++row.cells;
      wall += c.wall_ms;
      row.used_truth = row.used_truth || c.used_truth;
      if (!c.ok) {
        ++row.failed;
        continue;
      }
      const double values[5] = {c.quality.nmi, c.quality.ari, c.quality.nf1, c.quality.rmi, c.quality.nrmi};
      for (int v = 0; v < 5; ++v) q[v].add(c.instance, values[v]);
      for (std::size_t x = 0; x < cell_count; ++x) {
        if (c.cells[x].phi) phi[x].add(c.instance, *c.cells[x].phi);
        if (c.cells[x].degenerate()) ++row.degenerate[x];
      }
    }
    row.nmi = q[0].spread();
    row.ari = q[1].spread();
    row.nf1 = q[2].spread();
    row.rmi = q[3].spread();
    row.nrmi = q[4].spread();
    for (std::size_t x = 0; x < cell_count; ++x) row.phi[x] = phi[x].spread();
    row.wall_ms_mean = row.cells ? wall / static_cast<double>(row.cells) : 0;
    rows.push_back(std::move(row));
    i = j;
  }
  return rows;
}

inline ExperimentResult run_experiment(const ExperimentConfig& config) {
  const auto networks = build_networks(config);
  std::vector<CdMethod> methods;
  for (const auto& m : config.methods) methods.push_back(make_method(m.algorithm, m.params, m.name));

  // Job order is the output order: network, method, instance, repetition.
  std::vector<CellResult> jobs;
  std::vector<const NetworkInstance*> job_network;
  for (std::size_t ni = 0; ni < config.networks.size(); ++ni) {
    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
      for (const auto& net : networks) {
        if (net.network != ni) continue;
        for (std::size_t rep = 0; rep < config.repetitions; ++rep) {
          CellResult c;
          c.network = ni;
          c.instance = net.instance;
          c.method = mi;
          c.repetition = rep;
          c.network_id = net.id;
          c.method_name = methods[mi].name();
          c.seed = derive_seed(config.seed, ni, net.instance, methods[mi].name(), rep);
          jobs.push_back(std::move(c));
          job_network.push_back(&net);
        }
      }
    }
  }
  // A deterministic method under the deterministic tie policy gives the same
  // cell on every repetition, so only the first one is computed.
  auto reuses_first = [&](const CellResult& c) {
    return c.repetition > 0 && methods[c.method].deterministic() && config.tie_policy == TiePolicy::deterministic;
  };
  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < jobs.size(); ++i)
    if (!reuses_first(jobs[i])) todo.push_back(i);
  ExperimentResult result;
  result.cells.resize(jobs.size());
  detail::parallel_for(todo.size(), config.threads, [&](std::size_t t) {
    const std::size_t i = todo[t];
    result.cells[i] = run_cell(*job_network[i], methods[jobs[i].method], config, jobs[i]);
  });
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (!reuses_first(jobs[i])) continue;
    const std::size_t first = i - jobs[i].repetition;
    CellResult copy = result.cells[first];
    copy.repetition = jobs[i].repetition;
    copy.seed = jobs[i].seed;
    result.cells[i] = std::move(copy);
  }
  result.rows = aggregate(result.cells);
  return result;
}

inline std::string cell_suffix(Metric m, Property p) {
  return std::string(to_string(m)) + "_" + std::string(to_string(p));
}

inline std::vector<std::string> long_form_header() {
  std::vector<std::string> h = {"network",  "instance",          "method",
                                "repetition", "seed",            "status",
                                "error",    "used_truth",        "warnings",
                                "truth_communities", "predicted_communities", "unmatched_predicted",
                                "nmi",      "ari",               "nf1",
                                "rmi",      "nrmi"};
  for (auto m : all_metrics)
    for (auto p : all_properties) {
      const auto s = cell_suffix(m, p);
      for (const char* field : {"phi_", "slope_", "points_", "degenerate_"}) h.push_back(field + s);
    }
  return h;
}

inline void write_long_form(std::ostream& out, const std::vector<CellResult>& cells) {
  write_csv_row(out, long_form_header());
  for (const auto& c : cells) {
    std::string warnings;
    for (const auto& w : c.warnings) warnings += (warnings.empty() ? "" : "; ") + w;
    std::vector<std::string> f = {c.network_id,
                                  std::to_string(c.instance),
                                  c.method_name,
                                  std::to_string(c.repetition),
                                  std::to_string(c.seed),
                                  c.ok ? "ok" : "failed",
                                  c.error,
                                  c.used_truth ? "true" : "false",
                                  warnings};
    if (c.ok) {
      for (auto v : {c.truth_communities, c.predicted_communities, c.unmatched_predicted}) f.push_back(std::to_string(v));
      for (double v : {c.quality.nmi, c.quality.ari, c.quality.nf1, c.quality.rmi, c.quality.nrmi})
        f.push_back(format_exact(v));
      for (const auto& cell : c.cells) {
        f.push_back(format_optional(cell.phi));
        f.push_back(format_optional(cell.slope));
        f.push_back(std::to_string(cell.points));
        f.push_back(std::string(to_string(cell.degeneracy)));
      }
    } else {
      f.resize(long_form_header().size());
    }
    write_csv_row(out, f);
  }
}

inline void write_aggregate(std::ostream& out, const std::vector<ResultRow>& rows) {
  std::vector<std::string> h = {"network", "method", "cells", "failed", "used_truth"};
  auto spread_header = [&h](const std::string& name) {
    for (const char* s : {"_mean", "_std", "_std_networks", "_std_runs", "_n"}) h.push_back(name + s);
  };
  for (const char* q : {"nmi", "ari", "nf1", "rmi", "nrmi"}) spread_header(q);
  for (auto m : all_metrics)
    for (auto p : all_properties) {
      spread_header("phi_" + cell_suffix(m, p));
      h.push_back("degenerate_" + cell_suffix(m, p));
    }
  h.push_back("wall_ms_mean");
  write_csv_row(out, h);
  for (const auto& r : rows) {
    std::vector<std::string> f = {r.network_id, r.method_name, std::to_string(r.cells), std::to_string(r.failed),
                                  r.used_truth ? "true" : "false"};
    auto spread = [&f](const Spread& s) {
      for (const auto& v : {s.mean, s.pooled, s.networks, s.runs}) f.push_back(format_optional(v));
      f.push_back(std::to_string(s.count));
    };
    for (const auto* s : {&r.nmi, &r.ari, &r.nf1, &r.rmi, &r.nrmi}) spread(*s);
    for (std::size_t x = 0; x < cell_count; ++x) {
      spread(r.phi[x]);
      f.push_back(std::to_string(r.degenerate[x]));
    }
    f.push_back(format_fixed(r.wall_ms_mean, 3));
    write_csv_row(out, f);
  }
}

inline void write_timings(std::ostream& out, const std::vector<CellResult>& cells) {
  write_csv_row(out, {"network", "instance", "method", "repetition", "wall_ms"});
  for (const auto& c : cells)
    write_csv_row(out, {c.network_id, std::to_string(c.instance), c.method_name, std::to_string(c.repetition),
                        format_fixed(c.wall_ms, 3)});
}

}  // namespace faircd::bench
