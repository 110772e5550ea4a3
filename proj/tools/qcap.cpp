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

// qcap: experiment runner for the quantum channel capacity library.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qcap/cli.hpp"

namespace {

using qcap::cli::ExperimentConfig;

// Flags shared by every experiment subcommand. Unset flags leave the
// config file (or defaults) untouched.
struct CommonFlags {
  std::string config;
  std::string output;
  std::string format;
  std::vector<double> grid;
  std::optional<int> restarts;
  std::optional<int> max_iters;
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
};

void add_common(CLI::App* app, CommonFlags& f, bool with_grid, const char* grid_help) {
  app->add_option("--config", f.config, "JSON config file; flags override its values")
      ->check(CLI::ExistingFile);
  app->add_option("-o,--output", f.output, "Write the report here instead of stdout");
  app->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  if (with_grid) app->add_option("--grid", f.grid, grid_help)->delimiter(',');
  app->add_option("--restarts", f.restarts, "Optimizer restarts");
  app->add_option("--max-iters", f.max_iters, "Optimizer iteration cap per restart");
  app->add_option("--seed", f.seed, "Master seed (QCAP_SEED overrides the config file)");
  app->add_option("--jobs", f.jobs, "Worker threads for grid points");
}

ExperimentConfig resolve(const std::string& name, const CommonFlags& f) {
  ExperimentConfig cfg = qcap::cli::default_config(name);
  if (!f.config.empty()) qcap::cli::merge_config_file(cfg, f.config);
  qcap::cli::apply_seed_from_env(cfg);
  if (!f.output.empty()) cfg.output = f.output;
  if (!f.format.empty()) {
    cfg.format = f.format == "csv" ? qcap::cli::Format::kCsv : qcap::cli::Format::kJson;
  }
  if (!f.grid.empty()) cfg.grid = f.grid;
  if (f.restarts) cfg.optimizer.restarts = *f.restarts;
  if (f.max_iters) cfg.optimizer.max_iters = *f.max_iters;
  if (f.seed) cfg.optimizer.seed = *f.seed;
  if (f.jobs) cfg.jobs = *f.jobs;
  cfg.optimizer.check();
  return cfg;
}

template <typename Fn>
int with_output(const ExperimentConfig& cfg, Fn&& fn) {
  if (cfg.output.empty()) return fn(std::cout);
  std::ofstream out(cfg.output, std::ios::binary);
  if (!out) throw qcap::Error("cannot write " + cfg.output);
  const int status = fn(out);
  out.close();
  if (!out) throw qcap::Error("error writing " + cfg.output);
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qcap: quantum channel capacity experiments"};
  app.require_subcommand(1);

  CommonFlags fig8_f, fig13_f, sa_f, nc_f, eb_f, sw_f;
  auto* fig8 = app.add_subcommand("fig8", "Single-use vs three-use repetition coherent information (CSV)");
  add_common(fig8, fig8_f, true, "Comma-separated q values in [0, 0.3]");

  auto* fig13 = app.add_subcommand("fig13", "Switched completely depolarizing Holevo information (CSV)");
  add_common(fig13, fig13_f, true, "Comma-separated d values in [2, 16]");
  std::optional<int> numeric_max_d;
  fig13->add_option("--numeric-max-d", numeric_max_d, "Largest d for the numeric column");

  auto* sa = app.add_subcommand("superactivation", "Joint Horodecki (x) erasure search (JSON)");
  add_common(sa, sa_f, true, "Comma-separated Horodecki q values");

  auto* nc = app.add_subcommand("nonconvexity", "Two-shot flagged-mixture scan (JSON)");
  add_common(nc, nc_f, true, "Comma-separated mixing weights p");

  auto* eb = app.add_subcommand("switch-eb", "Causal activation of the switched EB pair (JSON)");
  add_common(eb, eb_f, false, "");

  auto* sw = app.add_subcommand("switch", "Compare sequential and switched placements (JSON)");
  add_common(sw, sw_f, false, "");
  std::string left, right;
  double p = 0.5;
  sw->add_option("--left", left, "First channel spec (e.g. dep:q=0.19)")->required();
  sw->add_option("--right", right, "Second channel spec")->required();
  sw->add_option("--p", p, "Control weight: sqrt(p)|0> + sqrt(1-p)|1>")
      ->check(CLI::Range(0.0, 1.0));

  auto* validate = app.add_subcommand("validate", "Check a channel JSON file");
  std::string path;
  validate->add_option("path", path, "Channel JSON file")->required();

  auto* zoo = app.add_subcommand("zoo", "Named channels");
  zoo->require_subcommand(1);
  auto* zoo_list = zoo->add_subcommand("list", "List channel specs");
  auto* zoo_export = zoo->add_subcommand("export", "Write a channel as JSON");
  std::string spec, export_out;
  zoo_export->add_option("spec", spec, "Channel spec (e.g. horodecki:q=0.5)")->required();
  zoo_export->add_option("-o,--output", export_out, "Output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    using namespace qcap::cli;
    if (fig8->parsed()) {
      const auto cfg = resolve("fig8", fig8_f);
      return with_output(cfg, [&](std::ostream& o) { return cmd_fig8(cfg, o); });
    }
    if (fig13->parsed()) {
      auto cfg = resolve("fig13", fig13_f);
      if (numeric_max_d) cfg.numeric_max_d = *numeric_max_d;
      return with_output(cfg, [&](std::ostream& o) { return cmd_fig13(cfg, o); });
    }
    if (sa->parsed()) {
      const auto cfg = resolve("superactivation", sa_f);
      return with_output(cfg, [&](std::ostream& o) { return cmd_superactivation(cfg, o); });
    }
    if (nc->parsed()) {
      const auto cfg = resolve("nonconvexity", nc_f);
      return with_output(cfg, [&](std::ostream& o) { return cmd_nonconvexity(cfg, o); });
    }
    if (eb->parsed()) {
      const auto cfg = resolve("switch-eb", eb_f);
      return with_output(cfg, [&](std::ostream& o) { return cmd_switch_eb(cfg, o); });
    }
    if (sw->parsed()) {
      const auto cfg = resolve("switch", sw_f);
      return with_output(cfg, [&](std::ostream& o) { return cmd_switch(left, right, p, cfg, o); });
    }
    if (validate->parsed()) return cmd_validate(path, std::cout, std::cerr);
    if (zoo_list->parsed()) return cmd_zoo_list(std::cout);
    if (zoo_export->parsed()) {
      if (export_out.empty()) return cmd_zoo_export(spec, std::cout);
      std::ofstream out(export_out, std::ios::binary);
      if (!out) throw qcap::Error("cannot write " + export_out);
      return cmd_zoo_export(spec, out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return qcap::cli::kUsage;
  }
  return qcap::cli::kUsage;
}
