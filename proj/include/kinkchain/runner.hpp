#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "kinkchain/model.hpp"
#include "kinkchain/serialize.hpp"

namespace kinkchain {

enum class Pipeline { Ground, Interface, Ed, Crossval, Extrapolate };

[[nodiscard]] std::string to_string(Pipeline p);
[[nodiscard]] Pipeline pipeline_from_string(const std::string& name);

enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitPartial = 3, kExitInvariant = 4 };

struct ExperimentConfig {
  Model model = Model::XzAf;
  std::vector<int> n_values;
  std::vector<double> epsilons;
  TruncationPolicy policy;
  std::set<Pipeline> pipelines{Pipeline::Ground};
  std::filesystem::path out = "results";
  std::string format = "json";  // json | csv
  int workers = 1;

  // Throws ConfigError naming the offending field.
  void validate() const;
  // Adds the pipelines a requested one depends on.
  [[nodiscard]] std::set<Pipeline> resolved_pipelines() const;
};

struct RunResult {
  int exit_code = kExitOk;
  std::vector<std::filesystem::path> files;
  Json summary;
};

// Result document for one (N, eps) cell. Never throws for solver failures;
// they are recorded in meta.status and meta.error.
[[nodiscard]] Json run_cell(const ExperimentConfig& config, int n_sites, double epsilon);

[[nodiscard]] std::string cell_name(Model model, int n_sites, double epsilon);

// Runs every cell, writes one document per cell plus summary.json.
[[nodiscard]] RunResult run(const ExperimentConfig& config);

}  // namespace kinkchain
