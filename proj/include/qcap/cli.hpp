// Copyright 2026 The qcap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QCAP_CLI_HPP
#define QCAP_CLI_HPP

#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qcap/capacity.hpp"

namespace qcap::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kValidationFailure = 2,
  kBelowFloor = 3,
};

enum class Format { kCsv, kJson };

struct ExperimentConfig {
  std::string name;
  std::vector<double> grid;
  OptimizerOptions optimizer;
  std::string output;  // empty: standard output
  Format format = Format::kCsv;
  /// fig13 only: numeric Holevo column computed for d <= this.
  int numeric_max_d = 4;
  /// Worker threads for grid points; results are always ordered by index.
  int jobs = 1;
};

/// Defaults for a named experiment (grid, format, optimizer budget).
ExperimentConfig default_config(const std::string& name);

/// Overlays a JSON config document on `cfg`. Recognized keys: grid,
/// optimizer {restarts, max_iters, step_init, conv_tol, seed}, output,
/// format, numeric_max_d, jobs. Unknown keys are rejected.
void merge_config(ExperimentConfig& cfg, const nlohmann::json& doc);
void merge_config_file(ExperimentConfig& cfg, const std::filesystem::path& path);

/// Reads QCAP_SEED, if set, into cfg.optimizer.seed.
void apply_seed_from_env(ExperimentConfig& cfg);

/// Shortest round-trip-safe rendering with 12 significant digits, '.' as
/// the decimal separator regardless of locale.
std::string format_real(double x);

/// Runs fn(0..n-1) on up to `jobs` threads.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn);

nlohmann::json estimate_to_json(const CapacityEstimate& est);

// Each command writes its report to `out` and returns an ExitCode.
int cmd_fig8(const ExperimentConfig& cfg, std::ostream& out);
int cmd_fig13(const ExperimentConfig& cfg, std::ostream& out);
int cmd_superactivation(const ExperimentConfig& cfg, std::ostream& out);
int cmd_nonconvexity(const ExperimentConfig& cfg, std::ostream& out);
int cmd_switch_eb(const ExperimentConfig& cfg, std::ostream& out);
int cmd_switch(const std::string& left, const std::string& right, double p,
               const ExperimentConfig& cfg, std::ostream& out);
int cmd_validate(const std::filesystem::path& path, std::ostream& out, std::ostream& err);
int cmd_zoo_list(std::ostream& out);
int cmd_zoo_export(const std::string& spec, std::ostream& out);

}  // namespace qcap::cli

#endif  // QCAP_CLI_HPP
