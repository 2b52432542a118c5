#pragma once

// Task dispatch behind the command-line driver.  Exit codes: 0 pass,
// 1 a check or construction failed, 2 the input was unusable.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "z2n/io.hpp"

namespace z2n::io {

enum class Format { Json, Text };

struct SessionConfig {
  int rank = 1;
  std::optional<double> tol;  // unset: each operation's default
  int level_cap = kDefaultLevelCap;
  std::uint64_t seed = 7;
  Format format = Format::Json;
  bool skip_validate = false;
};

/// Keys: rank, tol, level_cap, seed, format ("json" | "text"), skip_validate.
SessionConfig config_from_json(const json& doc, SessionConfig base = {});
SessionConfig load_config(const std::filesystem::path& path, SessionConfig base = {});

struct TaskSpec {
  std::string command;
  std::vector<std::string> inputs;
  std::map<std::string, std::string> params;
  std::string output;  // file written by constructions; empty: none
};

struct TaskResult {
  std::string command;
  int exit_code = 0;
  int rank = 0;
  Report report;
  std::string error;
  std::vector<std::string> written;
};

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitInput = 2;

const std::vector<std::string>& task_names();
const std::vector<std::string>& example_names();

TaskResult run_task(const SessionConfig& config, const TaskSpec& task);
/// Runs independent tasks concurrently; results keep the input order.
std::vector<TaskResult> run_batch(const SessionConfig& config, const std::vector<TaskSpec>& tasks,
                                  bool parallel = true);
/// {"schema": "z2n.batch/1", "tasks": [{"command", "inputs", "params", "output"}]}
std::vector<TaskSpec> batch_from_json(const json& doc);

json result_to_json(const TaskResult& r);
std::string format_result(const TaskResult& r, Format format);

}  // namespace z2n::io
