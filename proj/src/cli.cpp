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

#include "qcap/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "qcap/channel_io.hpp"
#include "qcap/random.hpp"
#include "qcap/switch.hpp"
#include "qcap/zoo.hpp"

namespace qcap::cli {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr double kSuperactivationFloor = 0.01;
constexpr double kSuperactivationStretch = 0.1;
constexpr double kCeilingTol = 1e-6;
constexpr double kIdentityTol = 1e-9;
constexpr double kClosedFormTol = 1e-12;
constexpr double kFig13Fraction = 0.9;

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  return v;
}

void require_grid(const ExperimentConfig& cfg, double lo, double hi, const char* what) {
  if (cfg.grid.empty()) throw Error(cfg.name + ": grid is empty");
  for (double x : cfg.grid) {
    if (!(x >= lo && x <= hi)) {
      std::ostringstream os;
      os << cfg.name << ": " << what << " = " << x << " outside [" << lo << ", " << hi << "]";
      throw Error(os.str());
    }
  }
}

ordered_json state_json(const DensityMatrix& rho) { return matrix_to_json(rho.matrix()); }

void write_json(std::ostream& out, const ordered_json& j) { out << j.dump(2) << "\n"; }

ordered_json estimate_json(const CapacityEstimate& est) {
  ordered_json j;
  j["value"] = est.value;
  j["converged"] = est.converged;
  j["restarts"] = est.restarts_used;
  if (est.argmax_state) j["argmax_state"] = state_json(*est.argmax_state);
  if (est.argmax_ensemble) {
    ordered_json ens;
    ens["probs"] = std::vector<double>(est.argmax_ensemble->probs.data(),
                                       est.argmax_ensemble->probs.data() +
                                           est.argmax_ensemble->probs.size());
    ordered_json states = ordered_json::array();
    for (const auto& s : est.argmax_ensemble->states) states.push_back(state_json(s));
    ens["states"] = std::move(states);
    j["argmax_ensemble"] = std::move(ens);
  }
  return j;
}

}  // namespace

// ---------------------------------------------------------------------------
// Configuration

ExperimentConfig default_config(const std::string& name) {
  ExperimentConfig cfg;
  cfg.name = name;
  if (name == "fig8") {
    cfg.grid = linspace(0.0, 0.3, 61);
  } else if (name == "fig13") {
    cfg.grid = {2, 3, 4, 5, 6, 7, 8};
    cfg.optimizer.restarts = 8;
  } else if (name == "superactivation") {
    cfg.grid = {kHorodeckiPptQ};
    cfg.format = Format::kJson;
  } else if (name == "nonconvexity") {
    cfg.grid = linspace(0.1, 0.9, 9);
    cfg.optimizer.restarts = 1;
    cfg.format = Format::kJson;
  } else if (name == "switch-eb" || name == "switch") {
    cfg.optimizer.restarts = 8;
    cfg.format = Format::kJson;
  } else {
    throw Error("unknown experiment '" + name + "'");
  }
  return cfg;
}

void merge_config(ExperimentConfig& cfg, const json& doc) {
  if (!doc.is_object()) throw Error("config: top level must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key == "grid") {
      cfg.grid = value.get<std::vector<double>>();
    } else if (key == "output") {
      cfg.output = value.get<std::string>();
    } else if (key == "format") {
      const auto f = value.get<std::string>();
      if (f == "csv") {
        cfg.format = Format::kCsv;
      } else if (f == "json") {
        cfg.format = Format::kJson;
      } else {
        throw Error("config: format must be \"csv\" or \"json\"");
      }
    } else if (key == "numeric_max_d") {
      cfg.numeric_max_d = value.get<int>();
    } else if (key == "jobs") {
      cfg.jobs = value.get<int>();
    } else if (key == "name") {
      if (value.get<std::string>() != cfg.name) {
        throw Error("config: document is for '" + value.get<std::string>() + "', not '" +
                    cfg.name + "'");
      }
    } else if (key == "optimizer") {
      for (const auto& [k, v] : value.items()) {
        auto& o = cfg.optimizer;
        if (k == "restarts") {
          o.restarts = v.get<int>();
        } else if (k == "max_iters") {
          o.max_iters = v.get<int>();
        } else if (k == "step_init") {
          o.step_init = v.get<double>();
        } else if (k == "conv_tol") {
          o.conv_tol = v.get<double>();
        } else if (k == "seed") {
          o.seed = v.get<std::uint64_t>();
        } else {
          throw Error("config: unknown optimizer key '" + k + "'");
        }
      }
    } else {
      throw Error("config: unknown key '" + key + "'");
    }
  }
  cfg.optimizer.check();
}

void merge_config_file(ExperimentConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(path.string() + ": " + e.what());
  }
  try {
    merge_config(cfg, doc);
  } catch (const json::exception& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

void apply_seed_from_env(ExperimentConfig& cfg) {
  const char* env = std::getenv("QCAP_SEED");
  if (env == nullptr || *env == '\0') return;
  const std::string_view s(env);
  std::uint64_t seed = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), seed);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error("QCAP_SEED must be a nonnegative integer, got '" + std::string(s) + "'");
  }
  cfg.optimizer.seed = seed;
}

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0) x = 0;  // no "-0"
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
  if (ec != std::errc()) throw Error("format_real: conversion failed");
  return std::string(buf, ptr);
}

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(jobs, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

json estimate_to_json(const CapacityEstimate& est) { return json(estimate_json(est)); }

// ---------------------------------------------------------------------------
// Figure data

int cmd_fig8(const ExperimentConfig& cfg, std::ostream& out) {
  require_grid(cfg, 0.0, 0.3, "q");
  struct Row {
    double q, single, rate, total;
  };
  std::vector<Row> rows(cfg.grid.size());
  parallel_for(rows.size(), cfg.jobs, [&](std::size_t i) {
    const double q = cfg.grid[i];
    const auto rep = repetition_coherent_information(q);
    rows[i] = {q, depolarizing_ic_closed_form(q), rep.rate, rep.total};
  });
  if (cfg.format == Format::kCsv) {
    out << "q,ic_single,ic_three_use_rate,ic_three_use_total\n";
    for (const auto& r : rows) {
      out << format_real(r.q) << "," << format_real(r.single) << "," << format_real(r.rate) << ","
          << format_real(r.total) << "\n";
    }
  } else {
    ordered_json j = ordered_json::array();
    for (const auto& r : rows) {
      j.push_back({{"q", r.q},
                   {"ic_single", r.single},
                   {"ic_three_use_rate", r.rate},
                   {"ic_three_use_total", r.total}});
    }
    write_json(out, j);
  }
  return kOk;
}

int cmd_fig13(const ExperimentConfig& cfg, std::ostream& out) {
  require_grid(cfg, 2, 16, "d");
  for (double d : cfg.grid) {
    if (d != std::floor(d)) throw Error("fig13: d must be an integer");
  }
  struct Row {
    std::size_t d;
    double closed, numeric;
    bool converged;
  };
  std::vector<Row> rows(cfg.grid.size());
  parallel_for(rows.size(), cfg.jobs, [&](std::size_t i) {
    const auto d = static_cast<std::size_t>(cfg.grid[i]);
    Row r{d, switched_cd_holevo_closed_form(d), NAN, false};
    if (static_cast<int>(d) <= cfg.numeric_max_d) {
      const auto cd = completely_depolarizing(d);
      const auto sw = quantum_switch(cd, cd, switch_control(0.5));
      const auto est = maximize_holevo(sw.effective, static_cast<int>(2 * d), cfg.optimizer);
      r.numeric = est.value;
      r.converged = est.converged;
    }
    rows[i] = r;
  });
  int status = kOk;
  for (const auto& r : rows) {
    if (r.d == 2 && !(r.numeric >= kFig13Fraction * r.closed)) status = kBelowFloor;
  }
  if (cfg.format == Format::kCsv) {
    out << "d,chi_closed_form,chi_numeric_lower_bound\n";
    for (const auto& r : rows) {
      out << r.d << "," << format_real(r.closed) << "," << format_real(r.numeric) << "\n";
    }
  } else {
    ordered_json j = ordered_json::array();
    for (const auto& r : rows) {
      ordered_json row{{"d", r.d}, {"chi_closed_form", r.closed}};
      row["chi_numeric_lower_bound"] = std::isnan(r.numeric) ? ordered_json() : ordered_json(r.numeric);
      row["converged"] = r.converged;
      j.push_back(std::move(row));
    }
    write_json(out, j);
  }
  return status;
}

// ---------------------------------------------------------------------------
// Zero-capacity experiments

int cmd_superactivation(const ExperimentConfig& cfg, std::ostream& out) {
  require_grid(cfg, 0.0, 1.0, "q");
  const auto erasure = erasure_50_two_qubit();
  const auto starts = superactivation_initial_states();
  std::vector<SuperactivationPoint> points(cfg.grid.size());
  parallel_for(points.size(), cfg.jobs, [&](std::size_t i) {
    const double q = cfg.grid[i];
    SuperactivationPoint& pt = points[i];
    pt.q = q;
    const auto h = horodecki_4d(q);
    pt.ppt = is_ppt(h);
    if (!pt.ppt.ppt) return;
    pt.horodecki_ceiling = maximize_coherent_information(h, cfg.optimizer);
    pt.erasure_ceiling = maximize_coherent_information(erasure, cfg.optimizer);
    pt.joint = maximize_coherent_information(tensor(h, erasure), cfg.optimizer, starts);
  });

  int status = kOk;
  int best = -1;
  ordered_json per_q = ordered_json::array();
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& pt = points[i];
    ordered_json j;
    j["q"] = pt.q;
    j["ppt"] = pt.ppt.ppt;
    j["ppt_min_eigenvalue"] = pt.ppt.min_eigenvalue;
    if (pt.joint) {
      const double hc = pt.horodecki_ceiling->value;
      const double ec = pt.erasure_ceiling->value;
      j["horodecki_ceiling"] = hc;
      j["erasure_ceiling"] = ec;
      j["ceilings_ok"] = hc <= kCeilingTol && ec <= kCeilingTol;
      if (!(hc <= kCeilingTol && ec <= kCeilingTol)) status = kValidationFailure;
      j["joint"] = estimate_json(*pt.joint);
      if (best < 0 || pt.joint->value > points[static_cast<std::size_t>(best)].joint->value) {
        best = static_cast<int>(i);
      }
    }
    per_q.push_back(std::move(j));
  }

  ordered_json report;
  report["experiment"] = "superactivation";
  report["channels"] = {"horodecki", "erasure50"};
  report["seed"] = cfg.optimizer.seed;
  report["restarts"] = cfg.optimizer.restarts;
  report["acceptance_floor"] = kSuperactivationFloor;
  report["stretch_target"] = kSuperactivationStretch;
  if (best >= 0) {
    const double v = points[static_cast<std::size_t>(best)].joint->value;
    report["best_q"] = points[static_cast<std::size_t>(best)].q;
    report["best_joint_ic"] = v;
    report["floor_met"] = v >= kSuperactivationFloor;
    report["stretch_met"] = v > kSuperactivationStretch;
    if (status == kOk && v < kSuperactivationFloor) status = kBelowFloor;
  } else {
    report["best_q"] = nullptr;
    report["best_joint_ic"] = nullptr;
    report["floor_met"] = false;
    report["stretch_met"] = false;
    status = kValidationFailure;  // no PPT-certified q on the grid
  }
  report["points"] = std::move(per_q);
  write_json(out, report);
  return status;
}

int cmd_nonconvexity(const ExperimentConfig& cfg, std::ostream& out) {
  require_grid(cfg, 0.0, 1.0, "p");
  const auto h = horodecki_4d();
  const auto e = erasure_50_two_qubit();

  // Best joint state for N_H (x) N_E, its mirror image, and their mixture.
  std::vector<DensityMatrix> starts = superactivation_initial_states();
  const auto joint = maximize_coherent_information(tensor(h, e), cfg.optimizer, starts);
  const DensityMatrix& rho = *joint.argmax_state;
  const std::size_t dims[] = {4, 4};
  const std::size_t swap[] = {1, 0};
  const DensityMatrix mirrored =
      DensityMatrix::trusted(permute_subsystems(rho.matrix(), dims, swap));
  const std::vector<DensityMatrix> two_shot_starts = {
      rho, mirrored, DensityMatrix::trusted(0.5 * (rho.matrix() + mirrored.matrix()))};

  struct Row {
    double p;
    TwoShotValues at_state;
    CapacityEstimate optimized;
  };
  std::vector<Row> rows(cfg.grid.size());
  parallel_for(rows.size(), cfg.jobs, [&](std::size_t i) {
    const double p = cfg.grid[i];
    const auto m = nonconvexity_mixture(p);
    rows[i] = {p, nonconvexity_two_shot(p, rho),
               maximize_coherent_information(tensor(m, m), cfg.optimizer, two_shot_starts)};
  });

  int status = kOk;
  double max_residual = 0.0;
  ordered_json scan = ordered_json::array();
  std::size_t best = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const double residual = std::abs(r.at_state.direct - r.at_state.expansion);
    max_residual = std::max(max_residual, residual);
    if (rows[i].optimized.value > rows[best].optimized.value) best = i;
    ordered_json j;
    j["p"] = r.p;
    j["direct"] = r.at_state.direct;
    j["expansion"] = r.at_state.expansion;
    j["identity_residual"] = residual;
    j["branches"] = {{"HH", r.at_state.branches[0]},
                     {"HE", r.at_state.branches[1]},
                     {"EH", r.at_state.branches[2]},
                     {"EE", r.at_state.branches[3]}};
    j["two_shot_ic_optimized"] = r.optimized.value;
    j["optimized_converged"] = r.optimized.converged;
    scan.push_back(std::move(j));
  }
  if (!(max_residual <= kIdentityTol)) status = kValidationFailure;

  ordered_json report;
  report["experiment"] = "nonconvexity";
  report["seed"] = cfg.optimizer.seed;
  report["restarts"] = cfg.optimizer.restarts;
  report["superactivation_state_ic"] = joint.value;
  report["superactivation_state"] = state_json(rho);
  report["identity_tolerance"] = kIdentityTol;
  report["max_identity_residual"] = max_residual;
  report["best_p"] = rows[best].p;
  report["best_two_shot_ic"] = rows[best].optimized.value;
  report["positive_two_shot_found"] = rows[best].optimized.value > kCeilingTol;
  report["scan"] = std::move(scan);
  write_json(out, report);
  return status;
}

// ---------------------------------------------------------------------------
// Switch experiments

int cmd_switch_eb(const ExperimentConfig& cfg, std::ostream& out) {
  const auto eb = eb_xy();
  const auto sw = quantum_switch(eb, eb, switch_control(0.5));

  // Closed-form residual on fixed probes plus seeded random states.
  std::vector<DensityMatrix> probes = {DensityMatrix::pure(ket(2, 0)),
                                       DensityMatrix::maximally_mixed(2)};
  Rng rng(derive_seed(cfg.optimizer.seed, 0));
  for (int i = 0; i < 16; ++i) probes.emplace_back(random_density_matrix(2, rng));
  double residual = 0.0;
  for (const auto& rho : probes) {
    residual = std::max(residual, (qcap::apply(sw.effective, rho.matrix()) -
                                   switched_eb_closed_form(rho).matrix())
                                      .norm());
  }

  const double ic_pi = coherent_information(DensityMatrix::maximally_mixed(2), sw.effective);
  const auto ic_opt = maximize_coherent_information(sw.effective, cfg.optimizer);
  const auto seq_nm = maximize_coherent_information(compose(eb, eb), cfg.optimizer);
  const auto single = maximize_coherent_information(eb, cfg.optimizer);

  const bool residual_ok = residual <= kClosedFormTol;
  const bool ic_ok = std::abs(ic_pi - 1.0) <= kIdentityTol;
  const bool seq_ok = seq_nm.value <= kCeilingTol && single.value <= kCeilingTol;

  ordered_json report;
  report["experiment"] = "switch-eb";
  report["seed"] = cfg.optimizer.seed;
  report["closed_form_residual"] = residual;
  report["closed_form_ok"] = residual_ok;
  report["switched_ic_maximally_mixed"] = ic_pi;
  report["switched_ic_ok"] = ic_ok;
  report["switched_ic_optimized"] = estimate_json(ic_opt);
  // Both sequential orders coincide for identical factors.
  report["sequential_ic"] = seq_nm.value;
  report["single_use_ic"] = single.value;
  report["sequential_ok"] = seq_ok;
  write_json(out, report);
  return residual_ok && ic_ok && seq_ok ? kOk : kValidationFailure;
}

int cmd_switch(const std::string& left, const std::string& right, double p,
               const ExperimentConfig& cfg, std::ostream& out) {
  const auto n = channel_from_spec(left);
  const auto m = channel_from_spec(right);
  const auto rho = DensityMatrix::maximally_mixed(n.dim_in());
  const auto rep = bottleneck_comparison(n, m, rho, p, cfg.optimizer);

  ordered_json report;
  report["experiment"] = "switch";
  report["left"] = n.label();
  report["right"] = m.label();
  report["p"] = p;
  report["seed"] = cfg.optimizer.seed;
  report["input_state"] = "maximally_mixed";
  ordered_json placements = ordered_json::array();
  for (const auto& pl : rep.placements) {
    placements.push_back({{"placement", pl.name},
                          {"ic_at_state", pl.ic_at_state},
                          {"ic_max", pl.ic_max},
                          {"chi_max", pl.chi_max}});
  }
  report["placements"] = std::move(placements);
  report["ic_exceeds_sequential"] = rep.ic_exceeds_sequential;
  report["chi_exceeds_sequential"] = rep.chi_exceeds_sequential;
  write_json(out, report);
  return kOk;
}

// ---------------------------------------------------------------------------
// Channel files

int cmd_validate(const std::filesystem::path& path, std::ostream& out, std::ostream& err) {
  ChannelDocument doc;
  try {
    doc = read_channel_document(path);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kValidationFailure;
  }
  const double residual = completeness_residual(doc.kraus, doc.dim_in, doc.dim_out);

  // Choi matrix from the raw operators, so it is available even when the
  // completeness check fails.
  const std::size_t din = doc.dim_in, dout = doc.dim_out;
  ComplexMatrix c = ComplexMatrix::Zero(dout * din, dout * din);
  for (const auto& k : doc.kraus) {
    ComplexVector v(dout * din);
    for (std::size_t b = 0; b < dout; ++b) {
      for (std::size_t i = 0; i < din; ++i) v(b * din + i) = k(b, i);
    }
    c += v * v.adjoint() / static_cast<double>(din);
  }
  const std::size_t dims[] = {dout, din};
  const std::size_t keep_ref[] = {1};
  const double marginal =
      (partial_trace(c, dims, keep_ref) - identity(din) / static_cast<double>(din)).norm();

  ordered_json report;
  report["path"] = path.string();
  report["label"] = doc.label;
  report["dim_in"] = din;
  report["dim_out"] = dout;
  report["num_kraus"] = doc.kraus.size();
  report["cptp_residual"] = residual;
  report["choi_marginal_residual"] = marginal;
  const bool cptp = residual <= kDefaultTolerances.cptp_tol;
  report["cptp"] = cptp;
  if (cptp) {
    const KrausChannel ch(std::move(doc.kraus), din, dout, doc.label);
    const auto cls = classify(ch);
    report["ppt"] = cls.ppt.ppt;
    report["ppt_min_eigenvalue"] = cls.ppt.min_eigenvalue;
    report["entanglement_breaking_hint"] = cls.entanglement_breaking_hint;
    report["degradability"] = std::string(to_string(cls.degradability.verdict));
    report["degradable"] = cls.degradability.degradable;
    report["antidegradable"] = cls.degradability.antidegradable;
    const auto num = [](double x) { return std::isnan(x) ? ordered_json() : ordered_json(x); };
    report["degrading_residual"] = num(cls.degradability.degrading_residual);
    report["antidegrading_residual"] = num(cls.degradability.antidegrading_residual);
  } else {
    err << "error: " << path.string() << ": Kraus operators violate completeness (residual "
        << format_real(residual) << " > " << format_real(kDefaultTolerances.cptp_tol) << ")\n";
  }
  write_json(out, report);
  return cptp ? kOk : kValidationFailure;
}

int cmd_zoo_list(std::ostream& out) {
  for (const auto& e : zoo_catalog()) {
    out << e.name;
    if (!e.parameters.empty()) out << "  [" << e.parameters << "]";
    out << "\n    " << e.description << "\n";
  }
  return kOk;
}

int cmd_zoo_export(const std::string& spec, std::ostream& out) {
  out << channel_to_json(channel_from_spec(spec)).dump(2) << "\n";
  return kOk;
}

}  // namespace qcap::cli
