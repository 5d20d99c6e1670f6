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

#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <map>
#include <random>

#include "fixtures.hpp"
#include "mvsched/correlation.hpp"

using namespace mvsched;

namespace {

CorrelationSpec appendix_spec() {
  CorrelationSpec c;
  c.rho_s = 2;
  c.rho_t = 2;
  c.background_fraction = 0.7;
  c.overlap_at_distance = {{1, 0.6}};
  c.foreground_track = {0.25, 0.5, 0.05};
  return c;
}

// Rows [self, v2, t-2, t-1] of the Appendix matrix for camera 1.
std::vector<std::array<int, 4>> phi_rows(const DataUnit& du) {
  std::vector<std::array<int, 4>> rows;
  for (const Region& r : du.regions) {
    rows.push_back({r.has({1, 0}) ? 1 : 0, r.has({2, 0}) ? 1 : 0, r.has({1, 2}) ? 1 : 0, r.has({1, 1}) ? 1 : 0});
  }
  return rows;
}

bool same_regions(const SceneTrace& a, const SceneTrace& b) {
  if (a.size() != b.size()) return false;
  for (DuId id = 0; id < a.size(); ++id) {
    const auto& ra = a.at(id).regions;
    const auto& rb = b.at(id).regions;
    if (ra.size() != rb.size()) return false;
    for (std::size_t j = 0; j < ra.size(); ++j) {
      if (ra[j].contributors != rb[j].contributors || std::abs(ra[j].area - rb[j].area) > 1e-12) return false;
    }
  }
  return true;
}

}  // namespace

TEST(IntervalSet, Algebra) {
  auto a = IntervalSet::span(0.0, 0.3).unite(IntervalSet::span(0.2, 0.5)).unite(IntervalSet::span(0.7, 0.8));
  EXPECT_NEAR(a.measure(), 0.6, 1e-12);
  EXPECT_EQ(a.pieces().size(), 2u);
  EXPECT_TRUE(a.contains(0.4));
  EXPECT_FALSE(a.contains(0.6));
  EXPECT_NEAR(a.complement().measure(), 0.4, 1e-12);
  EXPECT_NEAR(IntervalSet::full().complement().measure(), 0.0, 1e-12);
}

TEST(Correlation, NoCorrelationGivesSelfOnlyRegions) {
  auto trace = build_static_trace(fixtures::spec(0, 0), fixtures::shape(4, 5));
  for (const auto& du : trace.dus()) {
    ASSERT_EQ(du.regions.size(), 1u);
    EXPECT_DOUBLE_EQ(du.regions[0].area, 1.0);
    EXPECT_EQ(du.regions[0].contributors, (std::vector<Contributor>{{du.frame.camera, 0}}));
  }
}

TEST(Correlation, TwoNeighbourFixtureFractions) {
  CorrelationSpec c;
  c.rho_s = 2;
  c.overlap_at_distance = {{1, 0.93}, {2, 0.91}};
  auto trace = build_static_trace(c, fixtures::shape(3, 1), CameraLayout{{1, 2, 4}});
  const auto& regions = trace.at(trace.id_of(2, 0)).regions;
  ASSERT_EQ(regions.size(), 3u);
  std::vector<double> areas;
  for (const auto& r : regions) areas.push_back(r.area);
  EXPECT_NEAR(areas[0], 0.09, 1e-12);
  EXPECT_NEAR(areas[1], 0.84, 1e-12);
  EXPECT_NEAR(areas[2], 0.07, 1e-12);
  EXPECT_EQ(regions[0].contributors, (std::vector<Contributor>{{1, 0}, {2, 0}}));
  EXPECT_EQ(regions[1].contributors, (std::vector<Contributor>{{1, 0}, {2, 0}, {3, 0}}));
  EXPECT_EQ(regions[2].contributors, (std::vector<Contributor>{{2, 0}, {3, 0}}));
}

TEST(Correlation, AppendixMatrix) {
  auto trace = build_static_trace(appendix_spec(), fixtures::shape(2, 3));
  auto rows = phi_rows(trace.at(trace.id_of(1, 2)));
  std::vector<std::array<int, 4>> expect = {{1, 0, 1, 1}, {1, 0, 0, 1}, {1, 1, 1, 0}, {1, 1, 1, 1},
                                            {1, 0, 0, 0}, {1, 1, 0, 1}, {1, 1, 0, 0}};
  ASSERT_EQ(rows.size(), 7u);
  std::sort(rows.begin(), rows.end());
  std::sort(expect.begin(), expect.end());
  EXPECT_EQ(rows, expect);
}

TEST(Correlation, AppendixRegionAreas) {
  // Hand-evaluated interval bookkeeping for the fixture geometry.
  auto trace = build_static_trace(appendix_spec(), fixtures::shape(2, 3));
  std::map<std::array<int, 4>, double> area;
  const auto& du = trace.at(trace.id_of(1, 2));
  const auto rows = phi_rows(du);
  for (std::size_t j = 0; j < rows.size(); ++j) area[rows[j]] = du.regions[j].area;
  EXPECT_NEAR((area[{1, 0, 1, 1}]), 0.05, 1e-12);
  EXPECT_NEAR((area[{1, 0, 0, 0}]), 0.30, 1e-12);
  EXPECT_NEAR((area[{1, 0, 0, 1}]), 0.05, 1e-12);
  EXPECT_NEAR((area[{1, 1, 0, 1}]), 0.10, 1e-12);
  EXPECT_NEAR((area[{1, 1, 0, 0}]), 0.05, 1e-12);
  EXPECT_NEAR((area[{1, 1, 1, 0}]), 0.25, 1e-12);
  EXPECT_NEAR((area[{1, 1, 1, 1}]), 0.20, 1e-12);
}

TEST(Correlation, ContributorsStayWithinSpans) {
  auto trace = build_static_trace(fixtures::spec(4, 2), fixtures::shape(6, 5));
  for (const auto& du : trace.dus()) {
    double sum = 0.0;
    for (const auto& r : du.regions) {
      sum += r.area;
      for (const auto& c : r.contributors) {
        EXPECT_LE(std::abs(c.camera - du.frame.camera), 2);
        EXPECT_LE(c.offset, 2);
        if (c.offset > 0) EXPECT_EQ(c.camera, du.frame.camera);
      }
    }
    EXPECT_NEAR(sum, 1.0, 1e-9);
  }
}

TEST(Correlation, FarApartCamerasAreUncorrelated) {
  CorrelationSpec c;
  c.rho_s = 2;
  c.overlap_at_distance = {{1, 0.5}};
  auto trace = build_static_trace(c, fixtures::shape(2, 2), CameraLayout{{1, 4}});
  for (const auto& du : trace.dus()) {
    ASSERT_EQ(du.regions.size(), 1u);
    EXPECT_EQ(du.regions[0].contributors.size(), 1u);
  }
}

TEST(Correlation, DefaultOverlapLaw) {
  auto c = fixtures::spec(4, 0);
  EXPECT_NEAR(c.overlap(1), 1.0 - 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(c.overlap(2), 1.0 - 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(c.overlap(3), 0.0, 1e-12);
  EXPECT_NEAR(c.overlap(9), 0.0, 1e-12);
}

TEST(Correlation, SpecValidation) {
  auto c = fixtures::spec(3, 0);
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = fixtures::spec(2, -1);
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = fixtures::spec(2, 0, 1.5);
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = fixtures::spec(2, 0);
  c.overlap_at_distance = {{1, 1.2}};
  EXPECT_THROW(c.validate(), std::invalid_argument);
  EXPECT_THROW(build_static_trace(fixtures::spec(0, 0), fixtures::shape(0, 3)), std::invalid_argument);
}

TEST(StepDynamic, SingleCameraAlwaysMoves) {
  std::mt19937_64 rng(3);
  auto step = step_dynamic(CameraLayout{{1}}, rng);
  ASSERT_TRUE(step.moved_camera.has_value());
  EXPECT_EQ(step.layout.positions, (std::vector<int>{2}));
}

TEST(StepDynamic, BlockedProposalLeavesLayout) {
  // Cameras on adjacent cells at the left edge: camera 1 can only propose
  // position 2, which is taken.
  std::mt19937_64 rng(11);
  int blocked = 0;
  for (int i = 0; i < 200; ++i) {
    auto step = step_dynamic(CameraLayout{{1, 2}}, rng);
    if (!step.moved_camera) {
      EXPECT_EQ(step.layout.positions, (std::vector<int>{1, 2}));
      ++blocked;
    } else {
      EXPECT_EQ(*step.moved_camera, 2);
      EXPECT_EQ(step.layout.positions, (std::vector<int>{1, 3}));
    }
  }
  EXPECT_GT(blocked, 0);
}

TEST(StepDynamic, ChiSquareAgainstProposalModel) {
  // Layout {2, 3} on 4 cells. Enumerated outcome probabilities:
  // camera 1 -> 1: 1/4, camera 2 -> 4: 1/4, blocked: 1/2.
  std::mt19937_64 rng(2024);
  const int n = 100000;
  std::array<int, 3> count{};
  for (int i = 0; i < n; ++i) {
    auto step = step_dynamic(CameraLayout{{2, 3}}, rng);
    if (!step.moved_camera) {
      ++count[2];
    } else if (*step.moved_camera == 1) {
      ASSERT_EQ(step.layout.positions, (std::vector<int>{1, 3}));
      ++count[0];
    } else {
      ASSERT_EQ(step.layout.positions, (std::vector<int>{2, 4}));
      ++count[1];
    }
  }
  const std::array<double, 3> p{0.25, 0.25, 0.5};
  double chi2 = 0.0;
  for (int i = 0; i < 3; ++i) chi2 += std::pow(count[i] - n * p[i], 2) / (n * p[i]);
  EXPECT_LT(chi2, 13.82);  // df = 2, p = 0.001
}

TEST(DynamicTrace, NoMovementEqualsStatic) {
  const auto spec = fixtures::spec(2, 2);
  const auto shape = fixtures::shape(3, 4, 2);
  const CameraLayout layout{{1, 3, 5}};
  std::vector<CameraLayout> layouts(static_cast<std::size_t>(shape.last_acq_slot()), layout);
  std::vector<std::vector<bool>> moved(layouts.size(), std::vector<bool>(3, false));
  EXPECT_TRUE(same_regions(build_trace_from_layouts(spec, shape, layouts, moved),
                           build_static_trace(spec, shape, layout)));
}

TEST(DynamicTrace, MovedCameraLosesTemporalContributors) {
  const auto spec = fixtures::spec(2, 2, 0.8, 0.0);
  const auto shape = fixtures::shape(2, 4, 2);
  std::vector<CameraLayout> layouts(static_cast<std::size_t>(shape.last_acq_slot()), CameraLayout{{1, 3}});
  std::vector<std::vector<bool>> moved(layouts.size(), std::vector<bool>(2, false));
  // Camera 2 moves at slot 5 (acquisition of frame index 2).
  for (std::size_t s = 4; s < layouts.size(); ++s) layouts[s] = CameraLayout{{1, 4}};
  moved[4][1] = true;
  auto trace = build_trace_from_layouts(spec, shape, layouts, moved);
  for (const auto& r : trace.at(trace.id_of(2, 2)).regions) {
    for (const auto& c : r.contributors) EXPECT_EQ(c.offset, 0);
  }
  bool camera1_has_temporal = false;
  for (const auto& r : trace.at(trace.id_of(1, 2)).regions) {
    for (const auto& c : r.contributors) camera1_has_temporal = camera1_has_temporal || c.offset > 0;
  }
  EXPECT_TRUE(camera1_has_temporal);
}

TEST(DynamicTrace, DeterministicBySeed) {
  const auto spec = fixtures::spec(2, 1);
  const auto shape = fixtures::shape(4, 6, 2);
  std::mt19937_64 a(99), b(99), c(100);
  auto ta = build_dynamic_trace(spec, shape, a);
  auto tb = build_dynamic_trace(spec, shape, b);
  auto tc = build_dynamic_trace(spec, shape, c);
  EXPECT_TRUE(same_regions(ta, tb));
  EXPECT_EQ(ta.layouts(), tb.layouts());
  EXPECT_NE(ta.layouts(), tc.layouts());
}

TEST(DynamicTrace, LayoutsKeepCameraOrder) {
  std::mt19937_64 rng(5);
  auto trace = build_dynamic_trace(fixtures::spec(2, 1), fixtures::shape(5, 30, 4), rng);
  for (const auto& l : trace.layouts()) {
    EXPECT_TRUE(std::is_sorted(l.positions.begin(), l.positions.end()));
    EXPECT_NO_THROW(l.validate());
  }
}

TEST(MaskTrace, ViewsHideContributors) {
  auto trace = build_static_trace(fixtures::spec(2, 2), fixtures::shape(3, 5));
  auto spatial = mask_trace(trace, CorrelationView::SpatialOnly);
  auto temporal = mask_trace(trace, CorrelationView::TemporalOnly);
  auto none = mask_trace(trace, CorrelationView::None);
  for (DuId id = 0; id < trace.size(); ++id) {
    const int self = trace.at(id).frame.camera;
    double sum = 0.0;
    for (const auto& r : spatial.at(id).regions) {
      sum += r.area;
      for (const auto& c : r.contributors) EXPECT_EQ(c.offset, 0);
    }
    EXPECT_NEAR(sum, 1.0, 1e-9);
    for (const auto& r : temporal.at(id).regions) {
      for (const auto& c : r.contributors) EXPECT_EQ(c.camera, self);
    }
    ASSERT_EQ(none.at(id).regions.size(), 1u);
  }
  EXPECT_TRUE(same_regions(mask_trace(trace, CorrelationView::Full), trace));
}

TEST(TraceJson, RoundTrip) {
  std::mt19937_64 rng(8);
  auto trace = build_dynamic_trace(fixtures::spec(2, 2), fixtures::shape(3, 4, 2), rng);
  auto back = trace_from_json(trace_to_json(trace));
  EXPECT_TRUE(same_regions(trace, back));
  EXPECT_EQ(trace_to_json(back), trace_to_json(trace));
  EXPECT_THROW(trace_from_json("{\"schema_version\": 7}"), std::invalid_argument);
  EXPECT_THROW(trace_from_json("not json"), std::invalid_argument);
}
