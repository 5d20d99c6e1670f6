/*
 * Copyright (c) 2026 The mvsched Authors.
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mvsched/commands.hpp"
#include "mvsched/scenario_io.hpp"

namespace {

struct Options {
  std::string scenario;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<int> runs;
  std::string sweep;
  std::optional<double> oracle_cap;
  std::string json;
  bool timing = false;
  int instances = 100;
};

// --out wins; otherwise MVSCHED_OUT_DIR/<command>.csv; otherwise stdout.
void emit(const Options& opt, const std::string& command, const std::string& text) {
  std::string path = opt.out;
  if (path.empty()) {
    if (const char* dir = std::getenv("MVSCHED_OUT_DIR"); dir && *dir)
      path = (std::filesystem::path(dir) / (command + ".csv")).string();
  }
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error(path + ": cannot write output");
  f << text;
}

mvsched::ScenarioConfig load(const Options& opt) {
  mvsched::ScenarioConfig s = mvsched::load_scenario(opt.scenario);
  if (opt.seed) s.seed = *opt.seed;
  if (opt.runs) s.runs = *opt.runs;
  if (opt.oracle_cap) s.oracle_cap = *opt.oracle_cap;
  s.validate();
  return s;
}

std::pair<mvsched::SweepAxis, std::vector<std::string>> parse_sweep(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw std::invalid_argument("--sweep: expected <axis>=<v1,v2,...>");
  const mvsched::SweepAxis axis = mvsched::sweep_axis_from(text.substr(0, eq));
  std::vector<std::string> values;
  std::stringstream ss(text.substr(eq + 1));
  for (std::string v; std::getline(ss, v, ',');) {
    if (!v.empty()) values.push_back(v);
  }
  if (values.empty()) throw std::invalid_argument("--sweep: no values");
  return {axis, values};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Correlation-aware multiview scheduling simulator"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--scenario", opt.scenario, "Scenario JSON file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out, "Output CSV path");
    sub->add_option("--seed", opt.seed, "Base seed");
    sub->add_option("--runs", opt.runs, "Replications per cell")->check(CLI::PositiveNumber);
    sub->add_option("--oracle-cap", opt.oracle_cap, "Largest (L+1)^K the exhaustive search accepts");
    sub->add_flag("--timing", opt.timing, "Write measured runtime_ms instead of 0");
  };
  CLI::App* run = app.add_subcommand("run", "Simulate the scenario");
  add_common(run);
  run->add_option("--json", opt.json, "Also dump the first replication as JSON");
  CLI::App* sweep = app.add_subcommand("sweep", "Sweep one parameter");
  add_common(sweep);
  sweep->add_option("--sweep", opt.sweep, "<axis>=<v1,v2,...>; axis in rho_s, rho_t, K, rate, capacity, scheduler")
      ->required();
  CLI::App* compare = app.add_subcommand("compare", "Run every scheduler variant");
  add_common(compare);
  CLI::App* validate = app.add_subcommand("validate", "Pruned vs exhaustive search");
  add_common(validate);
  validate->add_option("--instances", opt.instances, "Number of random instances")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    const mvsched::ScenarioConfig scenario = load(opt);
    if (run->parsed()) {
      emit(opt, "run", mvsched::format_csv(mvsched::cmd_run(scenario), opt.timing));
      if (!opt.json.empty()) {
        std::ofstream f(opt.json, std::ios::binary);
        if (!f) throw std::runtime_error(opt.json + ": cannot write output");
        f << mvsched::run_result_to_json(mvsched::run(scenario));
      }
    } else if (sweep->parsed()) {
      const auto [axis, values] = parse_sweep(opt.sweep);
      emit(opt, "sweep", mvsched::format_csv(mvsched::sweep(scenario, axis, values), opt.timing));
    } else if (compare->parsed()) {
      emit(opt, "compare", mvsched::format_csv(mvsched::cmd_compare(scenario), opt.timing));
    } else if (validate->parsed()) {
      mvsched::ValidateOptions vo;
      vo.instances = opt.instances;
      const mvsched::ValidateReport report = mvsched::cmd_validate(scenario, vo);
      emit(opt, "validate", mvsched::format_validate_csv(report));
      std::cerr << "instances " << report.instances.size() << "  mean gap " << report.mean_gap << "  max gap "
                << report.max_gap << "  " << (report.passed ? "PASS" : "FAIL") << "\n";
      return report.passed ? 0 : 1;
    }
  } catch (const mvsched::OracleCapExceeded& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
