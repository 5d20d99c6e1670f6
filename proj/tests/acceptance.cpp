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

// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.
#include <array>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "mvsched/commands.hpp"
#include "mvsched/correlation.hpp"
#include "mvsched/simulator.hpp"

using namespace mvsched;

namespace {

// Tolerances.
constexpr double kMeanGapMax = 0.01;
constexpr double kMaxGapMax = 0.05;
constexpr double kOracleSecondsMax = 60.0;
constexpr double kBaselineMarginDb = 0.5;
constexpr double kBlindSlackDb = 0.1;
constexpr double kStepNoiseDb = 0.05;
constexpr double kPropertySecondsMax = 120.0;
constexpr double kSaturationTolDb = 1e-9;
constexpr double kAreaTol = 1e-12;
constexpr int kMonteCarloRuns = 1000;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 8 cameras, C = 2r, default timing (4 slots per acquisition, T_D = 5).
ScenarioConfig eight_cameras() {
  ScenarioConfig s;
  s.cameras = 8;
  s.frames = 30;
  s.rate_bps = 11.7e6;
  s.capacity_bps = 2 * s.rate_bps;
  s.correlation.rho_s = 4;
  s.correlation.rho_t = 2;
  s.correlation.content_motion = 0.05;
  s.scheduler = SchedulerKind::Greedy;
  s.runs = kMonteCarloRuns;
  return s;
}

Outcome oracle_gap() {
  const auto t0 = std::chrono::steady_clock::now();
  ScenarioConfig s;
  s.cameras = 4;
  s.frames = 30;
  s.rate_bps = 11.7e6;
  s.capacity_bps = 2 * s.rate_bps;
  s.correlation.rho_s = 2;
  s.correlation.rho_t = 2;
  s.correlation.content_motion = 0.05;
  s.survivors = 2;
  std::vector<double> gaps;
  for (int k : {3, 5}) {
    s.horizon = k;
    s.seed = static_cast<std::uint64_t>(1000 * k);
    ValidateOptions o;
    o.instances = 100;
    for (const auto& inst : cmd_validate(s, o).instances) gaps.push_back(inst.gap);
  }
  double mean = 0.0, worst = 0.0;
  for (double g : gaps) {
    mean += g;
    worst = std::max(worst, g);
  }
  mean /= static_cast<double>(gaps.size());
  const double secs = seconds_since(t0);
  return {mean <= kMeanGapMax && worst <= kMaxGapMax && secs < kOracleSecondsMax,
          std::to_string(gaps.size()) + " instances, mean gap " + fmt("%.5f", mean) + ", max gap " +
              fmt("%.5f", worst) + ", " + fmt("%.1f", secs) + " s"};
}

double mean_psnr(ScenarioConfig s, SchedulerKind kind, CorrelationView view = CorrelationView::Full) {
  s.scheduler = kind;
  s.view = view;
  return monte_carlo(s, s.runs).mean_psnr_db;
}

Outcome baseline_dominance() {
  const auto s = eight_cameras();
  const double greedy = mean_psnr(s, SchedulerKind::Greedy);
  const double rnd = mean_psnr(s, SchedulerKind::Random);
  const double aky = mean_psnr(s, SchedulerKind::Akyildiz);
  return {greedy >= rnd + kBaselineMarginDb && greedy > aky,
          "greedy " + fmt("%.3f", greedy) + " dB, random " + fmt("%.3f", rnd) + " dB, akyildiz " +
              fmt("%.3f", aky) + " dB"};
}

Outcome blind_pathology() {
  auto s = eight_cameras();
  s.correlation.rho_s = 8;
  s.correlation.rho_t = 3;
  const double blind = mean_psnr(s, SchedulerKind::Greedy, CorrelationView::None);
  const double rnd = mean_psnr(s, SchedulerKind::Random);
  return {blind <= rnd + kBlindSlackDb,
          "correlation-blind " + fmt("%.3f", blind) + " dB, random " + fmt("%.3f", rnd) + " dB"};
}

Outcome rho_s_monotone() {
  auto s = eight_cameras();
  s.correlation.rho_t = 3;
  s.runs = 1;  // static scene and deterministic scheduler
  const auto rows = sweep(s, SweepAxis::RhoS, {"0", "2", "4", "8"});
  bool ok = true;
  std::string detail;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    detail += (i ? ", " : "") + std::string("rho_s=") + rows[i].axis_value + ": " +
              fmt("%.3f", rows[i].stats.mean_psnr_db);
    if (i > 0) ok = ok && rows[i].stats.mean_psnr_db - rows[i - 1].stats.mean_psnr_db >= -kStepNoiseDb;
  }
  return {ok, detail};
}

Outcome horizon_benefit() {
  auto s = eight_cameras();
  s.trace_kind = TraceKind::Dynamic;
  s.scheduler = SchedulerKind::Trellis;
  s.survivors = 2;
  const auto rows = sweep(s, SweepAxis::Horizon, {"1", "2", "3", "4", "5"});
  bool ok = rows.back().stats.mean_psnr_db >= rows.front().stats.mean_psnr_db;
  std::string detail;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    detail += (i ? ", " : "") + std::string("K=") + rows[i].axis_value + ": " + fmt("%.3f", rows[i].stats.mean_psnr_db);
    if (i > 0) ok = ok && rows[i].stats.mean_psnr_db - rows[i - 1].stats.mean_psnr_db >= -kStepNoiseDb;
  }
  return {ok, detail};
}

Outcome rate_tradeoff() {
  ScenarioConfig s;
  s.cameras = 4;
  s.frames = 30;
  s.capacity_bps = 23.5e6;
  s.correlation.content_motion = 0.05;
  s.scheduler = SchedulerKind::Trellis;
  s.horizon = 3;
  s.runs = 1;
  const std::vector<std::string> rates = {"5800000", "11700000", "17000000", "23500000"};
  auto best_of = [&](int rho_s, int rho_t, std::string& detail) {
    ScenarioConfig c = s;
    c.correlation.rho_s = rho_s;
    c.correlation.rho_t = rho_t;
    const auto rows = sweep(c, SweepAxis::Rate, rates);
    std::size_t best = 0;
    detail += "rho_s=" + std::to_string(rho_s) + ",rho_t=" + std::to_string(rho_t) + " [";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      detail += (i ? " " : "") + fmt("%.4f", rows[i].stats.mean_psnr_db);
      if (rows[i].stats.mean_psnr_db > rows[best].stats.mean_psnr_db) best = i;
    }
    detail += "] best " + rates[best] + "; ";
    return best;
  };
  std::string detail;
  const std::size_t uncorrelated = best_of(0, 0, detail);
  const std::size_t correlated = best_of(4, 2, detail);
  return {uncorrelated == 0 && correlated != 0, detail};
}

Outcome invariant_suite() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string cmd = std::string(MVSCHED_PROPERTIES) + " --gtest_brief=1 > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  const double secs = seconds_since(t0);
  const bool ok = status == 0 && secs < kPropertySecondsMax;
  return {ok, std::string("property binary ") + (status == 0 ? "passed" : "failed") + " in " + fmt("%.1f", secs) +
                  " s"};
}

Outcome saturation() {
  ScenarioConfig s;
  // One DU per slot is the channel's hard limit, so keep M below the
  // acquisition period; C = 4r gives T_u = 1 and twice the aggregate rate.
  s.cameras = 2;
  s.frames = 20;
  s.capacity_bps = 4 * s.rate_bps;
  s.horizon = 2;
  const double expect = 10.0 * std::log10(s.rd.peak * s.rd.peak / rd_distortion(s.rate_bpp(), s.rd));
  bool ok = true;
  std::string detail;
  for (auto kind : {SchedulerKind::Trellis, SchedulerKind::Greedy, SchedulerKind::Exhaustive, SchedulerKind::Random,
                    SchedulerKind::Akyildiz}) {
    s.scheduler = kind;
    const auto r = run(s);
    const bool all = r.delivered == static_cast<std::size_t>(s.cameras * s.frames);
    ok = ok && all && std::abs(r.mean_psnr_db - expect) <= kSaturationTolDb;
    detail += std::string(to_string(kind)) + (all ? " all" : " partial") + " " + fmt("%.9f", r.mean_psnr_db) + "; ";
  }
  detail += "expected " + fmt("%.9f", expect);
  return {ok, detail};
}

Outcome fixture_reproduction() {
  // Two-neighbour geometry.
  CorrelationSpec fig;
  fig.rho_s = 2;
  fig.overlap_at_distance = {{1, 0.93}, {2, 0.91}};
  TraceShape shape;
  shape.cameras = 3;
  shape.frames = 1;
  const auto t1 = build_static_trace(fig, shape, CameraLayout{{1, 2, 4}});
  std::vector<double> areas;
  for (const auto& r : t1.at(t1.id_of(2, 0)).regions) areas.push_back(r.area);
  std::sort(areas.begin(), areas.end());
  const std::array<double, 3> expect_areas{0.07, 0.09, 0.84};
  bool areas_ok = areas.size() == 3;
  for (std::size_t i = 0; areas_ok && i < 3; ++i) areas_ok = std::abs(areas[i] - expect_areas[i]) <= kAreaTol;

  // Seven-region matrix, columns [self, v2, t-2, t-1].
  CorrelationSpec app;
  app.rho_s = 2;
  app.rho_t = 2;
  app.background_fraction = 0.7;
  app.overlap_at_distance = {{1, 0.6}};
  app.foreground_track = {0.25, 0.5, 0.05};
  shape.cameras = 2;
  shape.frames = 3;
  const auto t2 = build_static_trace(app, shape);
  std::vector<std::array<int, 4>> rows;
  for (const auto& r : t2.at(t2.id_of(1, 2)).regions)
    rows.push_back({r.has({1, 0}), r.has({2, 0}), r.has({1, 2}), r.has({1, 1})});
  std::vector<std::array<int, 4>> expect = {{1, 0, 1, 1}, {1, 0, 0, 1}, {1, 1, 1, 0}, {1, 1, 1, 1},
                                            {1, 0, 0, 0}, {1, 1, 0, 1}, {1, 1, 0, 0}};
  std::sort(rows.begin(), rows.end());
  std::sort(expect.begin(), expect.end());
  const bool matrix_ok = rows == expect;
  std::string detail = "fractions";
  for (double a : areas) detail += " " + fmt("%.4f", a);
  detail += "; matrix " + std::string(matrix_ok ? "matches" : "differs") + " (" + std::to_string(rows.size()) +
            " regions)";
  return {areas_ok && matrix_ok, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"1 oracle gap", oracle_gap},
      {"2 baseline dominance", baseline_dominance},
      {"3 correlation-blind pathology", blind_pathology},
      {"4 monotone in rho_s", rho_s_monotone},
      {"5 horizon benefit", horizon_benefit},
      {"6 rate tradeoff shape", rate_tradeoff},
      {"7 invariant suite", invariant_suite},
      {"8 degenerate saturation", saturation},
      {"9 fixture reproduction", fixture_reproduction},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
