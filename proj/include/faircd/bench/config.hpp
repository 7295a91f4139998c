#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "faircd/cd/method.hpp"
#include "faircd/group_fairness.hpp"
#include "faircd/quality_metrics.hpp"
#include "faircd/synth/homophilic.hpp"
#include "faircd/synth/lfr.hpp"

namespace faircd::bench {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class NetworkSource { lfr, homophilic, files };

struct NetworkSpec {
  std::string id;
  NetworkSource source = NetworkSource::lfr;
  LfrParams lfr;
  HomophilicParams homophilic;
  std::filesystem::path edges;
  std::filesystem::path partition;
  std::size_t instances = 1;  // forced to 1 for file networks
};

struct MethodSpec {
  std::string name;
  std::string algorithm;
  MethodParams params;
};

struct ScatterSpec {
  std::string quality = "nmi";  // nmi | ari | nf1 | rmi | nrmi
  Metric metric = Metric::fccn;
  Property property = Property::size;
};

struct ExperimentConfig {
  std::vector<NetworkSpec> networks;
  std::vector<MethodSpec> methods;
  std::size_t repetitions = 1;
  std::size_t network_instances = 1;
  std::uint64_t seed = 0;
  std::filesystem::path output;
  unsigned threads = 0;  // 0: hardware concurrency
  TiePolicy tie_policy = TiePolicy::deterministic;
  NmiNormalization nmi = NmiNormalization::arithmetic;
  std::vector<ScatterSpec> scatter;

  static ExperimentConfig from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = ".");
  static ExperimentConfig load(const std::filesystem::path& path);
};

inline Metric parse_metric(const std::string& s) {
  for (auto m : all_metrics)
    if (to_string(m) == s) return m;
  throw ConfigError("unknown metric '" + s + "' (expected FCCN, F1 or FCCE)");
}

inline Property parse_property(const std::string& s) {
  for (auto p : all_properties)
    if (to_string(p) == s) return p;
  throw ConfigError("unknown property '" + s + "' (expected size, density or conductance)");
}

namespace detail {

inline std::string param_text(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  return v.dump();
}

template <typename T>
void read_if(const nlohmann::json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

inline void reject_unknown(const nlohmann::json& j, std::initializer_list<const char*> known, const std::string& where) {
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

inline LfrParams lfr_from_json(const nlohmann::json& j) {
  reject_unknown(j, {"n", "mu", "tau1", "tau2", "avg_degree", "max_degree", "min_community", "max_community"},
                 "lfr params");
  LfrParams p;
  read_if(j, "n", p.n);
  read_if(j, "mu", p.mu);
  read_if(j, "tau1", p.tau1);
  read_if(j, "tau2", p.tau2);
  read_if(j, "avg_degree", p.avg_degree);
  read_if(j, "max_degree", p.max_degree);
  read_if(j, "min_community", p.min_community);
  read_if(j, "max_community", p.max_community);
  p.validate();
  return p;
}

inline HomophilicParams homophilic_from_json(const nlohmann::json& j) {
  reject_unknown(j, {"n_major", "n_minor", "homophily", "target_edges"}, "homophilic params");
  HomophilicParams p;
  read_if(j, "n_major", p.n_major);
  read_if(j, "n_minor", p.n_minor);
  read_if(j, "homophily", p.homophily);
  read_if(j, "target_edges", p.target_edges);
  p.validate();
  return p;
}

}  // namespace detail

// Schema (JSON):
// {
//   "seed": 42, "repetitions": 10, "network_instances": 10, "threads": 0,
//   "output": "results", "tie_policy": "deterministic" | "random",
//   "nmi_normalization": "arithmetic" | "max",
//   "networks": [
//     {"id": "lfr-0.2", "generator": "lfr", "params": {"n": 1000, "mu": 0.2}, "instances": 10},
//     {"id": "homophilic", "generator": "homophilic", "params": {"n_major": 70}},
//     {"id": "football", "edges": "football.txt", "partition": "football.tsv"}
//   ],
//   "methods": [
//     {"name": "louvain"},
//     {"name": "fluid", "params": {"k": "truth"}},
//     {"name": "infomap", "algorithm": "external",
//      "params": {"command": "run_infomap {edges} {output} {seed}", "timeout": 120}}
//   ],
//   "scatter": [{"quality": "nmi", "metric": "FCCN", "property": "size"}]
// }
// Relative paths resolve against the directory holding the config file.
inline ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j, const std::filesystem::path& base_dir) {
  try {
    detail::reject_unknown(j,
                           {"seed", "repetitions", "network_instances", "threads", "output", "tie_policy",
                            "nmi_normalization", "networks", "methods", "scatter"},
                           "config");
    ExperimentConfig c;
    detail::read_if(j, "seed", c.seed);
    detail::read_if(j, "repetitions", c.repetitions);
    detail::read_if(j, "network_instances", c.network_instances);
    detail::read_if(j, "threads", c.threads);
    if (j.contains("output")) c.output = base_dir / j.at("output").get<std::string>();
    if (c.repetitions < 1) throw ConfigError("repetitions must be at least 1");
    if (c.network_instances < 1) throw ConfigError("network_instances must be at least 1");
    const std::string tie = j.value("tie_policy", "deterministic");
    if (tie == "random") c.tie_policy = TiePolicy::random;
    else if (tie != "deterministic") throw ConfigError("tie_policy must be 'deterministic' or 'random'");
    const std::string norm = j.value("nmi_normalization", "arithmetic");
    if (norm == "max") c.nmi = NmiNormalization::max;
    else if (norm != "arithmetic") throw ConfigError("nmi_normalization must be 'arithmetic' or 'max'");

    if (!j.contains("networks") || j.at("networks").empty()) throw ConfigError("config names no networks");
    for (const auto& nj : j.at("networks")) {
      detail::reject_unknown(nj, {"id", "generator", "params", "instances", "edges", "partition"}, "network");
      NetworkSpec n;
      n.id = nj.at("id").get<std::string>();
      n.instances = nj.value("instances", c.network_instances);
      const auto params = nj.value("params", nlohmann::json::object());
      if (nj.contains("edges") || nj.contains("partition")) {
        n.source = NetworkSource::files;
        n.edges = base_dir / nj.at("edges").get<std::string>();
        n.partition = base_dir / nj.at("partition").get<std::string>();
        n.instances = 1;
        for (const auto& file : {n.edges, n.partition})
          if (!std::filesystem::exists(file)) throw ConfigError("network '" + n.id + "': missing file " + file.string());
      } else {
        const std::string gen = nj.at("generator").get<std::string>();
        if (gen == "lfr") {
          n.source = NetworkSource::lfr;
          n.lfr = detail::lfr_from_json(params);
        } else if (gen == "homophilic") {
          n.source = NetworkSource::homophilic;
          n.homophilic = detail::homophilic_from_json(params);
        } else {
          throw ConfigError("network '" + n.id + "': unknown generator '" + gen + "'");
        }
      }
      if (n.instances < 1) throw ConfigError("network '" + n.id + "': instances must be at least 1");
      c.networks.push_back(std::move(n));
    }

    if (!j.contains("methods") || j.at("methods").empty()) throw ConfigError("config names no methods");
    for (const auto& mj : j.at("methods")) {
      detail::reject_unknown(mj, {"name", "algorithm", "params"}, "method");
      MethodSpec m;
      m.name = mj.at("name").get<std::string>();
      m.algorithm = mj.value("algorithm", m.name);
      const auto params = mj.value("params", nlohmann::json::object());
      for (const auto& [k, v] : params.items()) m.params[k] = detail::param_text(v);
      make_method(m.algorithm, m.params, m.name);  // validates parameters early
      c.methods.push_back(std::move(m));
    }
    for (const auto& sj : j.value("scatter", nlohmann::json::array())) {
      detail::reject_unknown(sj, {"quality", "metric", "property"}, "scatter");
      ScatterSpec s;
      s.quality = sj.value("quality", "nmi");
      if (s.quality != "nmi" && s.quality != "ari" && s.quality != "nf1" && s.quality != "rmi" && s.quality != "nrmi")
        throw ConfigError("scatter: unknown quality metric '" + s.quality + "'");
      s.metric = parse_metric(sj.value("metric", "FCCN"));
      s.property = parse_property(sj.value("property", "size"));
      c.scatter.push_back(s);
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

inline ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in, nullptr, true, true);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return from_json(j, path.parent_path().empty() ? std::filesystem::path(".") : path.parent_path());
}

}  // namespace faircd::bench
