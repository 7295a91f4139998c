#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "faircd/cd/cnm.hpp"
#include "faircd/cd/external.hpp"
#include "faircd/cd/fluid.hpp"
#include "faircd/cd/label_propagation.hpp"
#include "faircd/cd/louvain.hpp"
#include "faircd/cd/walktrap.hpp"

namespace faircd {

enum class MethodKind { optimization, dynamics, propagation, miscellaneous, external };

constexpr std::string_view to_string(MethodKind k) {
  switch (k) {
    case MethodKind::optimization: return "optimization";
    case MethodKind::dynamics: return "dynamics";
    case MethodKind::propagation: return "propagation";
    case MethodKind::miscellaneous: return "miscellaneous";
    case MethodKind::external: return "external";
  }
  return "?";
}

using MethodParams = std::map<std::string, std::string>;

struct DetectionInput {
  const Graph& graph;
  const Partition* truth = nullptr;  // only consulted by methods that ask for it
  std::uint64_t seed = 0;
};

struct Detection {
  Partition partition;
  std::vector<std::string> warnings;
  bool used_truth = false;  // the method read ground-truth information (e.g. fluid's k)
};

// A named, configured detector. Deterministic methods ignore the seed.
class CdMethod {
 public:
  using Runner = std::function<Detection(const DetectionInput&)>;

  CdMethod(std::string name, MethodKind kind, bool deterministic, MethodParams params, Runner run)
      : name_(std::move(name)), kind_(kind), deterministic_(deterministic), params_(std::move(params)),
        run_(std::move(run)) {}

  const std::string& name() const { return name_; }
  MethodKind kind() const { return kind_; }
  bool deterministic() const { return deterministic_; }
  const MethodParams& params() const { return params_; }

  Detection run(const DetectionInput& in) const {
    DetectionInput effective = in;
    if (deterministic_) effective.seed = 0;
    return run_(effective);
  }

 private:
  std::string name_;
  MethodKind kind_;
  bool deterministic_;
  MethodParams params_;
  Runner run_;
};

namespace detail {

inline std::string param_or(const MethodParams& p, const std::string& key, const std::string& fallback) {
  const auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

inline long parse_long(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  long out = 0;
  try {
    out = std::stol(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size() || value.empty())
    throw std::invalid_argument("method parameter '" + key + "' must be an integer, got '" + value + "'");
  return out;
}

}  // namespace detail

inline std::vector<std::string> builtin_algorithms() {
  return {"louvain", "cnm", "label_propagation", "fluid", "walktrap", "external"};
}

// Builds a method from an algorithm name and parameters:
//   louvain                          -
//   cnm                              -
//   label_propagation  max_rounds    (default 100)
//   fluid              k             integer, or "truth" for the ground-truth count (default)
//   walktrap           t             walk length (default 4)
//   external           command, timeout (seconds, default 600), deterministic ("true"/"false")
inline CdMethod make_method(const std::string& algorithm, MethodParams params = {}, std::string name = {}) {
  if (name.empty()) name = algorithm;
  using detail::param_or;
  using detail::parse_long;
  if (algorithm == "louvain") {
    return {name, MethodKind::optimization, false, params,
            [](const DetectionInput& in) { return Detection{louvain(in.graph, in.seed), {}, false}; }};
  }
  if (algorithm == "cnm") {
    return {name, MethodKind::optimization, true, params,
            [](const DetectionInput& in) { return Detection{cnm_greedy(in.graph), {}, false}; }};
  }
  if (algorithm == "label_propagation") {
    const int rounds = static_cast<int>(parse_long("max_rounds", param_or(params, "max_rounds", "100")));
    return {name, MethodKind::propagation, false, params, [rounds](const DetectionInput& in) {
              auto r = label_propagation_run(in.graph, in.seed, rounds);
              Detection d{std::move(r.partition), {}, false};
              if (!r.converged) d.warnings.push_back("label propagation hit the round cap of " + std::to_string(rounds));
              return d;
            }};
  }
  if (algorithm == "fluid") {
    const std::string k = param_or(params, "k", "truth");
    std::optional<long> fixed;
    if (k != "truth") fixed = parse_long("k", k);
    return {name, MethodKind::propagation, false, params, [fixed](const DetectionInput& in) {
              std::size_t count = 0;
              if (fixed) {
                count = static_cast<std::size_t>(*fixed);
              } else {
                if (!in.truth) throw std::invalid_argument("fluid with k=truth needs a ground-truth partition");
                count = in.truth->community_count();
              }
              return Detection{fluid(in.graph, count, in.seed), {}, !fixed};
            }};
  }
  if (algorithm == "walktrap") {
    const int t = static_cast<int>(parse_long("t", param_or(params, "t", "4")));
    return {name, MethodKind::dynamics, true, params,
            [t](const DetectionInput& in) { return Detection{walktrap(in.graph, t), {}, false}; }};
  }
  if (algorithm == "external") {
    ExternalCommand cmd;
    cmd.command = param_or(params, "command", "");
    if (cmd.command.empty()) throw std::invalid_argument("external method '" + name + "' needs a command");
    cmd.timeout_seconds = std::stod(param_or(params, "timeout", "600"));
    const bool deterministic = param_or(params, "deterministic", "false") == "true";
    const bool reads_truth = cmd.command.find("{truth}") != std::string::npos;
    return {name, MethodKind::external, deterministic, params, [cmd, reads_truth](const DetectionInput& in) {
              return Detection{run_external(cmd, in.graph, in.seed, in.truth), {}, reads_truth};
            }};
  }
  throw std::invalid_argument("unknown algorithm '" + algorithm + "'");
}

}  // namespace faircd
