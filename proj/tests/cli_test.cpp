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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qcap/channel_io.hpp"
#include "qcap/cli.hpp"

using namespace qcap;
using namespace qcap::cli;
using nlohmann::json;

namespace {

std::filesystem::path temp_file(const std::string& name, const std::string& text) {
  const auto p = std::filesystem::temp_directory_path() / ("qcap_cli_test_" + name);
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST_CASE("format_real") {
  CHECK(format_real(0.1) == "0.1");
  CHECK(format_real(1.0 / 3) == "0.333333333333");
  CHECK(format_real(-0.0) == "0");
  CHECK(format_real(1e-20) == "1e-20");
  CHECK(format_real(123456789012345.0) == "1.23456789012e+14");
}

TEST_CASE("defaults") {
  const ExperimentConfig f8 = default_config("fig8");
  CHECK(f8.grid.size() == 61);
  CHECK(f8.grid.front() == 0.0);
  CHECK(f8.grid.back() == doctest::Approx(0.3));
  CHECK(f8.format == Format::kCsv);
  CHECK(default_config("fig13").grid.size() == 7);
  CHECK(default_config("superactivation").format == Format::kJson);
  CHECK_THROWS_AS(default_config("fig99"), Error);
}

TEST_CASE("config merging") {
  ExperimentConfig cfg = default_config("fig8");
  merge_config(cfg, json::parse(R"({"grid": [0.1, 0.2], "optimizer": {"seed": 9}, "format": "json"})"));
  CHECK(cfg.grid.size() == 2);
  CHECK(cfg.optimizer.seed == 9);
  CHECK(cfg.format == Format::kJson);
  CHECK_THROWS_WITH_AS(merge_config(cfg, json::parse(R"({"gird": []})")),
                       doctest::Contains("gird"), Error);
  CHECK_THROWS_AS(merge_config(cfg, json::parse(R"({"optimizer": {"sed": 1}})")), Error);
  CHECK_THROWS_AS(merge_config(cfg, json::parse(R"({"format": "xml"})")), Error);
  CHECK_THROWS_AS(merge_config(cfg, json::parse(R"({"name": "fig13"})")), Error);

  const auto path = temp_file("cfg.json", R"({"optimizer": {"restarts": 3}})");
  merge_config_file(cfg, path);
  CHECK(cfg.optimizer.restarts == 3);
  const auto bad = temp_file("bad_cfg.json", "{");
  CHECK_THROWS_AS(merge_config_file(cfg, bad), Error);
}

TEST_CASE("QCAP_SEED overrides the configured seed") {
  ExperimentConfig cfg = default_config("fig8");
  cfg.optimizer.seed = 5;
  ::setenv("QCAP_SEED", "1234", 1);
  apply_seed_from_env(cfg);
  CHECK(cfg.optimizer.seed == 1234);
  ::setenv("QCAP_SEED", "12x", 1);
  CHECK_THROWS_AS(apply_seed_from_env(cfg), Error);
  ::unsetenv("QCAP_SEED");
  apply_seed_from_env(cfg);
  CHECK(cfg.optimizer.seed == 1234);
}

TEST_CASE("parallel_for visits every index once") {
  std::vector<std::atomic<int>> hits(50);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i]++; });
  for (const auto& h : hits) CHECK(h.load() == 1);
}

TEST_CASE("fig8 CSV") {
  ExperimentConfig cfg = default_config("fig8");
  cfg.grid = {0.0, 0.19, 0.2};
  std::ostringstream out;
  CHECK(cmd_fig8(cfg, out) == kOk);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "q,ic_single,ic_three_use_rate,ic_three_use_total");
  std::getline(in, line);
  CHECK(line == "0,1,0.333333333333,1");
  std::getline(in, line);
  CHECK(line.rfind("0.19,0,", 0) == 0);

  cfg.grid = {0.5};
  std::ostringstream ignored;
  CHECK_THROWS_AS(cmd_fig8(cfg, ignored), Error);
}

TEST_CASE("fig13 CSV") {
  ExperimentConfig cfg = default_config("fig13");
  cfg.grid = {2, 5};
  cfg.optimizer.restarts = 2;
  cfg.numeric_max_d = 2;
  std::ostringstream out;
  CHECK(cmd_fig13(cfg, out) == kOk);
  const std::string s = out.str();
  CHECK(s.find("0.0487949406954") != std::string::npos);
  CHECK(s.find("nan") != std::string::npos);
}

TEST_CASE("switch-eb report") {
  ExperimentConfig cfg = default_config("switch-eb");
  cfg.optimizer.restarts = 2;
  std::ostringstream out;
  CHECK(cmd_switch_eb(cfg, out) == kOk);
  const json j = json::parse(out.str());
  CHECK(j.is_object());
}

TEST_CASE("switch command") {
  ExperimentConfig cfg = default_config("switch");
  cfg.optimizer.restarts = 1;
  std::ostringstream out;
  CHECK(cmd_switch("cd:d=2", "cd:d=2", 0.5, cfg, out) == kOk);
  const json j = json::parse(out.str());
  CHECK(j.dump().find("switch") != std::string::npos);
  std::ostringstream ignored;
  CHECK_THROWS_AS(cmd_switch("cd:d=2", "cd:d=3", 0.5, cfg, ignored), Error);
}

TEST_CASE("validate") {
  std::ostringstream out, err;
  const auto good = temp_file("ebxy.json", channel_to_json(eb_xy()).dump());
  CHECK(cmd_validate(good, out, err) == kOk);
  const json j = json::parse(out.str());
  CHECK(j["cptp"] == true);
  CHECK(j["ppt"] == true);
  CHECK(j["degradability"] == "antidegradable");

  json bad_doc = channel_to_json(depolarizing(0.1));
  bad_doc["kraus"][0][0][0][0] = 2.0;
  const auto bad = temp_file("bad.json", bad_doc.dump());
  std::ostringstream out2, err2;
  CHECK(cmd_validate(bad, out2, err2) == kValidationFailure);
  CHECK(err2.str().find("completeness") != std::string::npos);

  const auto broken = temp_file("broken.json", "{\"kraus\": [1, }");
  std::ostringstream out3, err3;
  CHECK(cmd_validate(broken, out3, err3) == kValidationFailure);
  CHECK(err3.str().find(":1:") != std::string::npos);

  std::ostringstream out4, err4;
  CHECK(cmd_validate("/nonexistent/qcap.json", out4, err4) == kValidationFailure);
}

TEST_CASE("zoo list and export") {
  std::ostringstream list;
  CHECK(cmd_zoo_list(list) == kOk);
  CHECK(list.str().find("horodecki") != std::string::npos);
  std::ostringstream out;
  CHECK(cmd_zoo_export("dep:q=0.2", out) == kOk);
  const KrausChannel ch = channel_from_json(json::parse(out.str()));
  CHECK(action_distance(ch, depolarizing(0.2)) < 1e-15);
}
