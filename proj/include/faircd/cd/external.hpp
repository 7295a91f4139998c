#pragma once

#include <fcntl.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <chrono>
#include <cstring>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "faircd/graph/io.hpp"

extern char** environ;

namespace faircd {

class ExternalMethodError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shell command template for an external detector. Placeholders:
//   {edges}   edge list written for the run (labels as in the graph)
//   {output}  partition file the command must write ("node<TAB>community")
//   {seed}    per-run seed
//   {truth}   ground-truth partition file, when one is available
//   {workdir} scratch directory of the run
struct ExternalCommand {
  std::string command;
  double timeout_seconds = 600;
};

namespace detail {

inline std::string substitute_all(std::string text, const std::string& from, const std::string& to) {
  for (auto pos = text.find(from); pos != std::string::npos; pos = text.find(from, pos + to.size()))
    text.replace(pos, from.size(), to);
  return text;
}

inline std::string substitute(std::string text, const std::string& name, const std::string& value) {
  return substitute_all(std::move(text), "{" + name + "}", value);
}

inline std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "'\\''";
    else out += c;
  }
  return out + "'";
}

class ScratchDir {
 public:
  explicit ScratchDir(std::uint64_t seed) {
    static std::atomic<std::uint64_t> counter{0};
    std::ostringstream name;
    name << "faircd-" << ::getpid() << "-" << counter++ << "-" << std::hex << seed;
    path_ = std::filesystem::temp_directory_path() / name.str();
    std::filesystem::create_directories(path_);
  }
  ~ScratchDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline std::string read_tail(const std::filesystem::path& path, std::size_t limit = 2048) {
  std::ifstream in(path, std::ios::binary);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (text.size() > limit) text = "..." + text.substr(text.size() - limit);
  return text;
}

// Runs `sh -c command` with stdout and stderr sent to log. Returns the exit
// status, or throws on timeout (the whole process group is killed).
inline int run_shell(const std::string& command, const std::filesystem::path& log, double timeout_seconds) {
  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_addopen(&actions, STDOUT_FILENO, log.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
  posix_spawn_file_actions_adddup2(&actions, STDOUT_FILENO, STDERR_FILENO);
  posix_spawnattr_t attr;
  posix_spawnattr_init(&attr);
  posix_spawnattr_setflags(&attr, POSIX_SPAWN_SETPGROUP);
  posix_spawnattr_setpgroup(&attr, 0);
  std::string sh = "/bin/sh", flag = "-c", cmd = command;
  char* argv[] = {sh.data(), flag.data(), cmd.data(), nullptr};
  pid_t pid = 0;
  const int rc = posix_spawn(&pid, "/bin/sh", &actions, &attr, argv, environ);
  posix_spawn_file_actions_destroy(&actions);
  posix_spawnattr_destroy(&attr);
  if (rc != 0) throw ExternalMethodError("cannot start /bin/sh: " + std::string(std::strerror(rc)));

  const auto deadline = std::chrono::steady_clock::now() + std::chrono::duration<double>(timeout_seconds);
  int status = 0;
  for (;;) {
    const pid_t done = ::waitpid(pid, &status, WNOHANG);
    if (done == pid) break;
    if (done < 0) throw ExternalMethodError("waitpid failed");
    if (std::chrono::steady_clock::now() > deadline) {
      ::kill(-pid, SIGKILL);
      ::waitpid(pid, &status, 0);
      throw ExternalMethodError("external command timed out after " + std::to_string(timeout_seconds) + " s");
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
  }
  if (WIFEXITED(status)) return WEXITSTATUS(status);
  return 128 + (WIFSIGNALED(status) ? WTERMSIG(status) : 0);
}

}  // namespace detail

namespace detail {

inline Partition run_external_in(const ExternalCommand& spec, const Graph& g, std::uint64_t seed,
                                 const Partition* truth, const ScratchDir& scratch) {
  const auto edges = scratch.path() / "edges.txt";
  const auto output = scratch.path() / "partition.tsv";
  const auto log = scratch.path() / "log.txt";
  save_edge_list(g, edges);
  std::string command = spec.command;
  if (command.find("{truth}") != std::string::npos) {
    if (!truth) throw ExternalMethodError("command uses {truth} but no ground truth is available");
    const auto truth_path = scratch.path() / "truth.tsv";
    save_partition(g, *truth, truth_path);
    command = substitute(command, "truth", shell_quote(truth_path.string()));
  }
  command = substitute(command, "edges", shell_quote(edges.string()));
  command = substitute(command, "output", shell_quote(output.string()));
  command = substitute(command, "workdir", shell_quote(scratch.path().string()));
  command = substitute(command, "seed", std::to_string(seed));

  const int status = run_shell(command, log, spec.timeout_seconds);
  if (status != 0)
    throw ExternalMethodError("external command exited with status " + std::to_string(status) + ": " +
                              read_tail(log));
  if (!std::filesystem::exists(output)) throw ExternalMethodError("external command wrote no partition file");
  try {
    return load_partition(output, g);
  } catch (const ParseError& e) {
    throw ExternalMethodError(std::string("unusable partition from external command: ") + e.what());
  }
}

}  // namespace detail

// Writes the graph, runs the command and parses the partition it produced.
// Error messages name scratch files relative to {workdir} so that they do not
// vary between runs.
inline Partition run_external(const ExternalCommand& spec, const Graph& g, std::uint64_t seed,
                              const Partition* truth = nullptr) {
  detail::ScratchDir scratch(seed);
  try {
    return detail::run_external_in(spec, g, seed, truth, scratch);
  } catch (const ExternalMethodError& e) {
    throw ExternalMethodError(detail::substitute_all(e.what(), scratch.path().string(), "{workdir}"));
  }
}

}  // namespace faircd
