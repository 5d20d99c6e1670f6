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

#include "mvsched/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace mvsched {

namespace {

constexpr double kMinSegment = 1e-12;

bool in_unit(double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; }

}  // namespace

void CorrelationSpec::validate() const {
  if (rho_s < 0 || rho_s % 2 != 0) throw std::invalid_argument("rho_s: must be even or 0");
  if (rho_t < 0) throw std::invalid_argument("rho_t: must be >= 0");
  if (!in_unit(background_fraction)) throw std::invalid_argument("background_fraction: must lie in [0, 1]");
  for (const auto& [d, o] : overlap_at_distance) {
    if (d < 1) throw std::invalid_argument("overlap_at_distance: distances must be >= 1");
    if (!in_unit(o)) throw std::invalid_argument("overlap_at_distance: fractions must lie in [0, 1]");
  }
  if (!std::isfinite(content_motion) || content_motion < 0.0)
    throw std::invalid_argument("content_motion: must be >= 0");
  for (double p : foreground_track) {
    if (!in_unit(p) || p + (1.0 - background_fraction) > 1.0 + 1e-12)
      throw std::invalid_argument("foreground_track: object must stay inside the frame");
  }
}

double CorrelationSpec::overlap(int distance) const {
  if (distance < 1) return 1.0;
  if (!overlap_at_distance.empty()) {
    auto it = overlap_at_distance.find(distance);
    return it == overlap_at_distance.end() ? 0.0 : it->second;
  }
  const double o = 1.0 - static_cast<double>(distance) / static_cast<double>(half_span() + 1);
  return std::clamp(o, 0.0, 1.0);
}

double CorrelationSpec::foreground_position(int frame_index) const {
  if (!foreground_track.empty()) {
    const auto n = static_cast<std::size_t>(frame_index) % foreground_track.size();
    return foreground_track[n];
  }
  const double range = background_fraction;  // free room for the left edge
  const double centre = range / 2.0;
  if (content_motion == 0.0 || range <= 0.0) return centre;
  const double u = std::fmod(centre + content_motion * frame_index, 2.0 * range);
  return u > range ? 2.0 * range - u : u;
}

IntervalSet IntervalSet::span(double a, double b) {
  IntervalSet s;
  a = std::clamp(a, 0.0, 1.0);
  b = std::clamp(b, 0.0, 1.0);
  if (b - a > 0.0) s.pieces_.emplace_back(a, b);
  return s;
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
  std::vector<std::pair<double, double>> all = pieces_;
  all.insert(all.end(), other.pieces_.begin(), other.pieces_.end());
  std::sort(all.begin(), all.end());
  IntervalSet out;
  for (const auto& p : all) {
    if (!out.pieces_.empty() && p.first <= out.pieces_.back().second) {
      out.pieces_.back().second = std::max(out.pieces_.back().second, p.second);
    } else {
      out.pieces_.push_back(p);
    }
  }
  return out;
}

IntervalSet IntervalSet::complement() const {
  IntervalSet out;
  double cursor = 0.0;
  for (const auto& [a, b] : pieces_) {
    if (a > cursor) out.pieces_.emplace_back(cursor, a);
    cursor = std::max(cursor, b);
  }
  if (cursor < 1.0) out.pieces_.emplace_back(cursor, 1.0);
  return out;
}

double IntervalSet::measure() const {
  double total = 0.0;
  for (const auto& [a, b] : pieces_) total += b - a;
  return total;
}

bool IntervalSet::contains(double x) const {
  return std::any_of(pieces_.begin(), pieces_.end(), [x](const auto& p) { return x >= p.first && x < p.second; });
}

std::vector<Region> decompose_regions(const Contributor& self, const std::vector<CoverageMask>& masks) {
  std::vector<double> cuts{0.0, 1.0};
  for (const CoverageMask& mask : masks) {
    for (const auto& [a, b] : mask.area.pieces()) {
      cuts.push_back(a);
      cuts.push_back(b);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<Region> regions;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double len = cuts[i + 1] - cuts[i];
    if (len < kMinSegment) continue;
    const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
    std::vector<Contributor> combo{self};
    for (const CoverageMask& mask : masks) {
      if (mask.area.contains(mid)) combo.push_back(mask.source);
    }
    std::sort(combo.begin(), combo.end());
    combo.erase(std::unique(combo.begin(), combo.end()), combo.end());
    auto it = std::find_if(regions.begin(), regions.end(),
                           [&](const Region& r) { return r.contributors == combo; });
    if (it == regions.end()) {
      regions.push_back(Region{len, std::move(combo)});
    } else {
      it->area += len;
    }
  }
  double total = 0.0;
  for (const Region& r : regions) total += r.area;
  for (Region& r : regions) r.area /= total;
  return regions;
}

CameraLayout line_layout(int cameras) {
  CameraLayout layout;
  for (int m = 1; m <= cameras; ++m) layout.positions.push_back(m);
  return layout;
}

namespace {

DataUnit make_du(const TraceShape& shape, int camera, int frame_index, std::vector<Region> regions) {
  DataUnit du;
  du.id = static_cast<DuId>(frame_index) * static_cast<DuId>(shape.cameras) + static_cast<DuId>(camera - 1);
  du.frame_index = frame_index;
  du.acq_slot = shape.acq_slot(frame_index);
  du.frame = FrameRef{camera, du.acq_slot};
  du.deadline_slot = du.acq_slot + shape.playback_delay;
  du.rate_bpp = shape.rate_bpp;
  du.size_bits = shape.bits_per_frame();
  du.regions = std::move(regions);
  return du;
}

}  // namespace

SceneTrace build_trace_from_layouts(const CorrelationSpec& spec, const TraceShape& shape,
                                    std::vector<CameraLayout> layouts, std::vector<std::vector<bool>> moved) {
  spec.validate();
  shape.validate();
  const auto slots = static_cast<std::size_t>(shape.last_acq_slot());
  if (layouts.size() < slots) throw std::invalid_argument("trace: need one layout per slot");
  if (moved.empty()) moved.assign(layouts.size(), std::vector<bool>(static_cast<std::size_t>(shape.cameras), false));
  if (moved.size() != layouts.size()) throw std::invalid_argument("trace: motion flags must match layouts");
  for (const CameraLayout& l : layouts) {
    if (l.cameras() != shape.cameras) throw std::invalid_argument("trace: layout camera count mismatch");
    l.validate();
  }

  std::vector<DataUnit> dus;
  dus.reserve(static_cast<std::size_t>(shape.cameras * shape.frames));
  for (int n = 0; n < shape.frames; ++n) {
    const int slot = shape.acq_slot(n);
    const CameraLayout& layout = layouts[static_cast<std::size_t>(slot - 1)];
    for (int m = 1; m <= shape.cameras; ++m) {
      auto temporal_ok = [&](int d) {
        const int from = shape.acq_slot(n - d);
        for (int s = from + 1; s <= slot; ++s) {
          if (moved[static_cast<std::size_t>(s - 1)][static_cast<std::size_t>(m - 1)]) return false;
        }
        return true;
      };
      auto masks = frame_masks(spec, layout, m, n, temporal_ok);
      dus.push_back(make_du(shape, m, n, decompose_regions(Contributor{m, 0}, masks)));
    }
  }
  return SceneTrace(shape, std::move(dus), std::move(layouts), std::move(moved));
}

SceneTrace build_static_trace(const CorrelationSpec& spec, const TraceShape& shape,
                              const std::optional<CameraLayout>& layout) {
  shape.validate();
  const CameraLayout fixed = layout ? *layout : line_layout(shape.cameras);
  std::vector<CameraLayout> layouts(static_cast<std::size_t>(shape.last_acq_slot()), fixed);
  return build_trace_from_layouts(spec, shape, std::move(layouts), {});
}

StepResult step_dynamic(const CameraLayout& layout, std::mt19937_64& rng) {
  StepResult out{layout, std::nullopt};
  const int m = layout.cameras();
  std::uniform_int_distribution<int> pick(1, m);
  const int camera = pick(rng);
  const int pos = layout.positions[static_cast<std::size_t>(camera - 1)];
  std::vector<int> options;
  if (pos - 1 >= 1) options.push_back(pos - 1);
  if (pos + 1 <= 2 * m) options.push_back(pos + 1);
  std::uniform_int_distribution<std::size_t> dir(0, options.size() - 1);
  const int target = options[dir(rng)];
  if (std::find(layout.positions.begin(), layout.positions.end(), target) != layout.positions.end()) return out;
  out.layout.positions[static_cast<std::size_t>(camera - 1)] = target;
  out.moved_camera = camera;
  return out;
}

CameraLayout random_layout(int cameras, std::mt19937_64& rng) {
  std::vector<int> all(static_cast<std::size_t>(2 * cameras));
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i) + 1;
  // Partial Fisher-Yates with an explicit distribution keeps the draw sequence
  // independent of the standard library's shuffle.
  for (std::size_t i = 0; i < static_cast<std::size_t>(cameras); ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, all.size() - 1);
    std::swap(all[i], all[pick(rng)]);
  }
  CameraLayout layout;
  layout.positions.assign(all.begin(), all.begin() + cameras);
  std::sort(layout.positions.begin(), layout.positions.end());
  return layout;
}

SceneTrace build_dynamic_trace(const CorrelationSpec& spec, const TraceShape& shape, std::mt19937_64& rng) {
  spec.validate();
  shape.validate();
  const auto slots = static_cast<std::size_t>(shape.last_acq_slot());
  std::vector<CameraLayout> layouts;
  std::vector<std::vector<bool>> moved;
  layouts.reserve(slots);
  moved.reserve(slots);
  layouts.push_back(random_layout(shape.cameras, rng));
  moved.emplace_back(static_cast<std::size_t>(shape.cameras), false);
  for (std::size_t s = 1; s < slots; ++s) {
    StepResult step = step_dynamic(layouts.back(), rng);
    std::vector<bool> flags(static_cast<std::size_t>(shape.cameras), false);
    if (step.moved_camera) flags[static_cast<std::size_t>(*step.moved_camera - 1)] = true;
    layouts.push_back(std::move(step.layout));
    moved.push_back(std::move(flags));
  }
  return build_trace_from_layouts(spec, shape, std::move(layouts), std::move(moved));
}

SceneTrace mask_trace(const SceneTrace& trace, CorrelationView view) {
  if (view == CorrelationView::Full) return trace;
  const bool keep_spatial = view == CorrelationView::SpatialOnly;
  const bool keep_temporal = view == CorrelationView::TemporalOnly;
  std::vector<DataUnit> dus(trace.dus().begin(), trace.dus().end());
  for (DataUnit& du : dus) {
    std::vector<Region> merged;
    for (const Region& r : du.regions) {
      std::vector<Contributor> kept;
      for (const Contributor& c : r.contributors) {
        const bool self = c.camera == du.frame.camera && c.offset == 0;
        const bool temporal = c.offset > 0;
        if (self || (temporal ? keep_temporal : keep_spatial)) kept.push_back(c);
      }
      auto it = std::find_if(merged.begin(), merged.end(), [&](const Region& x) { return x.contributors == kept; });
      if (it == merged.end()) {
        merged.push_back(Region{r.area, std::move(kept)});
      } else {
        it->area += r.area;
      }
    }
    du.regions = std::move(merged);
  }
  return SceneTrace(trace.shape(), std::move(dus), trace.layouts(), trace.moved());
}

std::string trace_to_json(const SceneTrace& trace) {
  using nlohmann::json;
  const TraceShape& s = trace.shape();
  json doc;
  doc["schema_version"] = 1;
  doc["cameras"] = s.cameras;
  doc["frames"] = s.frames;
  doc["slots_per_frame"] = s.slots_per_frame;
  doc["playback_delay"] = s.playback_delay;
  doc["rate_bpp"] = s.rate_bpp;
  doc["pixels_per_frame"] = s.pixels_per_frame;
  json layouts = json::array();
  for (const CameraLayout& l : trace.layouts()) layouts.push_back(l.positions);
  doc["layouts"] = std::move(layouts);
  json moved = json::array();
  for (const auto& row : trace.moved()) {
    json r = json::array();
    for (bool b : row) r.push_back(b ? 1 : 0);
    moved.push_back(std::move(r));
  }
  doc["moved"] = std::move(moved);
  json units = json::array();
  for (const DataUnit& du : trace.dus()) {
    json regions = json::array();
    for (const Region& r : du.regions) {
      json contributors = json::array();
      for (const Contributor& c : r.contributors) contributors.push_back({c.camera, c.offset});
      regions.push_back({{"area", r.area}, {"contributors", std::move(contributors)}});
    }
    units.push_back({{"id", du.id},
                     {"camera", du.frame.camera},
                     {"slot", du.acq_slot},
                     {"frame_index", du.frame_index},
                     {"size_bits", du.size_bits},
                     {"rate_bpp", du.rate_bpp},
                     {"deadline_slot", du.deadline_slot},
                     {"regions", std::move(regions)}});
  }
  doc["data_units"] = std::move(units);
  return doc.dump(1);
}

SceneTrace trace_from_json(const std::string& text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("trace: malformed JSON: ") + e.what());
  }
  try {
    if (doc.at("schema_version").get<int>() != 1) throw std::invalid_argument("trace: unsupported schema_version");
    TraceShape s;
    s.cameras = doc.at("cameras").get<int>();
    s.frames = doc.at("frames").get<int>();
    s.slots_per_frame = doc.at("slots_per_frame").get<int>();
    s.playback_delay = doc.at("playback_delay").get<int>();
    s.rate_bpp = doc.at("rate_bpp").get<double>();
    s.pixels_per_frame = doc.at("pixels_per_frame").get<double>();
    std::vector<CameraLayout> layouts;
    if (doc.contains("layouts")) {
      for (const auto& l : doc["layouts"]) layouts.push_back(CameraLayout{l.get<std::vector<int>>()});
    }
    std::vector<std::vector<bool>> moved;
    if (doc.contains("moved")) {
      for (const auto& row : doc["moved"]) {
        std::vector<bool> r;
        for (const auto& b : row) r.push_back(b.get<int>() != 0);
        moved.push_back(std::move(r));
      }
    }
    std::vector<DataUnit> dus;
    for (const auto& u : doc.at("data_units")) {
      DataUnit du;
      du.id = u.at("id").get<DuId>();
      du.acq_slot = u.at("slot").get<int>();
      du.frame = FrameRef{u.at("camera").get<int>(), du.acq_slot};
      du.frame_index = u.at("frame_index").get<int>();
      du.size_bits = u.at("size_bits").get<double>();
      du.rate_bpp = u.at("rate_bpp").get<double>();
      du.deadline_slot = u.at("deadline_slot").get<int>();
      for (const auto& r : u.at("regions")) {
        Region region;
        region.area = r.at("area").get<double>();
        for (const auto& c : r.at("contributors")) region.contributors.push_back({c.at(0).get<int>(), c.at(1).get<int>()});
        std::sort(region.contributors.begin(), region.contributors.end());
        du.regions.push_back(std::move(region));
      }
      dus.push_back(std::move(du));
    }
    return SceneTrace(s, std::move(dus), std::move(layouts), std::move(moved));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("trace: ") + e.what());
  }
}

}  // namespace mvsched
