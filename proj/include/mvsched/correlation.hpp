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

#ifndef MVSCHED_CORRELATION_HPP
#define MVSCHED_CORRELATION_HPP

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mvsched/trace.hpp"

namespace mvsched {

/// Correlation model of a synthetic scene.
///
/// Frames are modelled as the unit interval. A spatial neighbour at position
/// distance d covers overlap(d) of the frame, anchored on the neighbour's
/// side. Each frame carries one foreground object of width
/// 1 - background_fraction; a past frame of the same camera covers the pixels
/// that are background in both frames.
struct CorrelationSpec {
  int rho_s = 0;  // spatially correlated neighbours, rho_s / 2 per side
  int rho_t = 0;  // past frames usable for temporal extrapolation
  /// Overlap fraction by position distance. Empty selects the linear law
  /// 1 - d / (rho_s/2 + 1), clamped to [0, 1].
  std::map<int, double> overlap_at_distance;
  double background_fraction = 0.8;
  /// Foreground displacement per acquisition (fraction of frame width). The
  /// object bounces between the frame borders.
  double content_motion = 0.0;
  /// Explicit foreground left-edge positions, cycled by frame index.
  /// Overrides content_motion when non-empty.
  std::vector<double> foreground_track;

  void validate() const;
  double overlap(int distance) const;
  int half_span() const { return rho_s / 2; }
  /// Left edge of the foreground object in frame `frame_index`.
  double foreground_position(int frame_index) const;

  friend bool operator==(const CorrelationSpec&, const CorrelationSpec&) = default;
};

/// Finite union of half-open intervals [a, b) inside [0, 1].
class IntervalSet {
 public:
  IntervalSet() = default;
  static IntervalSet span(double a, double b);
  static IntervalSet full() { return span(0.0, 1.0); }

  IntervalSet unite(const IntervalSet& other) const;
  IntervalSet complement() const;
  double measure() const;
  bool contains(double x) const;
  const std::vector<std::pair<double, double>>& pieces() const { return pieces_; }

 private:
  std::vector<std::pair<double, double>> pieces_;  // sorted, disjoint, non-empty
};

/// A coverage mask: the part of the frame reconstructable from `source`.
struct CoverageMask {
  Contributor source;
  IntervalSet area;
};

/// Splits [0, 1] into disjoint regions, one per distinct combination of
/// covering masks. Every region also carries `self`. Regions are returned
/// in order of their leftmost point; areas sum to 1.
std::vector<Region> decompose_regions(const Contributor& self, const std::vector<CoverageMask>& masks);

/// Coverage masks of frame (camera, frame_index) under `layout`.
/// `temporal_ok(d)` tells whether the past frame at offset d is usable.
template <typename TemporalOk>
std::vector<CoverageMask> frame_masks(const CorrelationSpec& spec, const CameraLayout& layout, int camera,
                                      int frame_index, const TemporalOk& temporal_ok);

/// Default static layout: camera m at position m.
CameraLayout line_layout(int cameras);

SceneTrace build_static_trace(const CorrelationSpec& spec, const TraceShape& shape,
                              const std::optional<CameraLayout>& layout = std::nullopt);

/// Builds a trace from explicit per-slot layouts and motion flags
/// (moved[slot-1][camera-1]). Temporal contributors are dropped for a camera
/// that moved between the two acquisitions.
SceneTrace build_trace_from_layouts(const CorrelationSpec& spec, const TraceShape& shape,
                                    std::vector<CameraLayout> layouts, std::vector<std::vector<bool>> moved);

struct StepResult {
  CameraLayout layout;
  std::optional<int> moved_camera;
};

/// One random-walk step: a uniformly chosen camera proposes a uniformly
/// chosen neighbouring position and moves only if it is free.
StepResult step_dynamic(const CameraLayout& layout, std::mt19937_64& rng);

/// Random initial placement of M cameras on 2M positions (order preserved).
CameraLayout random_layout(int cameras, std::mt19937_64& rng);

SceneTrace build_dynamic_trace(const CorrelationSpec& spec, const TraceShape& shape, std::mt19937_64& rng);

/// Which correlation a scheduler is allowed to see.
enum class CorrelationView { Full, SpatialOnly, TemporalOnly, None };

/// Copy of `trace` with hidden contributor bits removed and regions that
/// became identical merged. DU ids are preserved.
SceneTrace mask_trace(const SceneTrace& trace, CorrelationView view);

/// JSON form of a trace (cameras, slots, per-frame regions with areas and
/// contributor lists).
std::string trace_to_json(const SceneTrace& trace);
SceneTrace trace_from_json(const std::string& text);

// ---------------------------------------------------------------------------

template <typename TemporalOk>
std::vector<CoverageMask> frame_masks(const CorrelationSpec& spec, const CameraLayout& layout, int camera,
                                      int frame_index, const TemporalOk& temporal_ok) {
  std::vector<CoverageMask> masks;
  const int m = layout.cameras();
  for (int k = 1; k <= spec.half_span(); ++k) {
    // Lower-index neighbours sit on the left and cover the left part.
    if (camera - k >= 1) {
      const double o = spec.overlap(layout.distance(camera, camera - k));
      if (o > 0.0) masks.push_back({Contributor{camera - k, 0}, IntervalSet::span(0.0, o)});
    }
    if (camera + k <= m) {
      const double o = spec.overlap(layout.distance(camera, camera + k));
      if (o > 0.0) masks.push_back({Contributor{camera + k, 0}, IntervalSet::span(1.0 - o, 1.0)});
    }
  }
  const double width = 1.0 - spec.background_fraction;
  auto object = [&](int n) {
    const double p = spec.foreground_position(n);
    return IntervalSet::span(p, p + width);
  };
  const IntervalSet current = object(frame_index);
  for (int d = 1; d <= spec.rho_t && frame_index - d >= 0; ++d) {
    if (!temporal_ok(d)) continue;
    IntervalSet visible = current.unite(object(frame_index - d)).complement();
    if (visible.measure() > 0.0) masks.push_back({Contributor{camera, d}, std::move(visible)});
  }
  return masks;
}

}  // namespace mvsched

#endif  // MVSCHED_CORRELATION_HPP
