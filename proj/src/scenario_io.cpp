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

#include "mvsched/scenario_io.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace mvsched {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw std::invalid_argument(path + ": " + what);
}

// Reads the members of one JSON object and rejects keys nobody asked for.
class Reader {
 public:
  Reader(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) fail(path_.empty() ? "<root>" : path_, "expected an object");
  }
  ~Reader() noexcept(false) {
    if (std::uncaught_exceptions() > 0) return;
    for (const auto& item : node_.items()) {
      if (!seen_.count(item.key())) fail(child(item.key()), "unknown key");
    }
  }

  std::string child(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
  bool has(const std::string& key) {
    seen_.insert(key);
    return node_.contains(key);
  }
  const json& at(const std::string& key) {
    if (!has(key)) fail(child(key), "required field missing");
    return node_.at(key);
  }

  template <typename T>
  void get(const std::string& key, T& out, bool required = false) {
    if (!has(key)) {
      if (required) fail(child(key), "required field missing");
      return;
    }
    const json& v = node_.at(key);
    try {
      if constexpr (std::is_integral_v<T>) {
        if (!v.is_number_integer()) fail(child(key), "expected an integer");
      } else if constexpr (std::is_floating_point_v<T>) {
        if (!v.is_number()) fail(child(key), "expected a number");
      } else if constexpr (std::is_same_v<T, std::string>) {
        if (!v.is_string()) fail(child(key), "expected a string");
      }
      out = v.get<T>();
    } catch (const json::exception& e) {
      fail(child(key), e.what());
    }
  }

 private:
  const json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

template <typename Parse>
auto enum_field(Reader& r, const std::string& key, Parse parse, decltype(parse("")) fallback) {
  std::string name;
  r.get(key, name);
  if (name.empty()) return fallback;
  try {
    return parse(name);
  } catch (const std::invalid_argument&) {
    fail(r.child(key), "unknown value '" + name + "'");
  }
}

void read_correlation(const json& node, CorrelationSpec& c) {
  Reader r(node, "trace.correlation");
  r.get("rho_s", c.rho_s);
  r.get("rho_t", c.rho_t);
  if (r.has("overlap_at_distance")) {
    const json& o = r.at("overlap_at_distance");
    if (!o.is_object()) fail(r.child("overlap_at_distance"), "expected an object keyed by distance");
    for (const auto& item : o.items()) {
      const std::string path = r.child("overlap_at_distance") + "." + item.key();
      int d = 0;
      try {
        std::size_t used = 0;
        d = std::stoi(item.key(), &used);
        if (used != item.key().size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        fail(path, "key must be an integer distance");
      }
      if (!item.value().is_number()) fail(path, "expected a number");
      c.overlap_at_distance[d] = item.value().get<double>();
    }
  }
  r.get("background_fraction", c.background_fraction);
  r.get("content_motion", c.content_motion);
  if (r.has("foreground_track")) {
    const json& f = r.at("foreground_track");
    if (!f.is_array()) fail(r.child("foreground_track"), "expected an array");
    for (const json& x : f) {
      if (!x.is_number()) fail(r.child("foreground_track"), "expected numbers");
      c.foreground_track.push_back(x.get<double>());
    }
  }
}

ScenarioConfig from_json(const json& doc) {
  ScenarioConfig s;
  Reader root(doc, "");
  int version = 0;
  root.get("schema_version", version, true);
  if (version != kScenarioSchemaVersion) fail("schema_version", "unsupported version " + std::to_string(version));

  {
    Reader r(root.at("trace"), "trace");
    s.trace_kind = enum_field(r, "kind", trace_kind_from, TraceKind::Static);
    r.get("cameras", s.cameras, true);
    r.get("frames", s.frames, true);
    r.get("positions", s.positions);
    if (r.has("correlation")) read_correlation(r.at("correlation"), s.correlation);
  }
  {
    Reader r(root.at("source"), "source");
    r.get("rate_bps", s.rate_bps, true);
    r.get("frame_rate", s.frame_rate);
    r.get("pixels_per_frame", s.pixels_per_frame);
  }
  if (root.has("rd")) {
    Reader r(root.at("rd"), "rd");
    r.get("mu", s.rd.mu);
    r.get("sigma2", s.rd.sigma2);
    r.get("peak", s.rd.peak);
  }
  root.get("weights", s.weights);
  {
    Reader r(root.at("channel"), "channel");
    r.get("capacity_bps", s.capacity_bps, true);
    r.get("slot_seconds", s.slot_seconds);
  }
  {
    Reader r(root.at("scheduler"), "scheduler");
    std::string kind;
    r.get("kind", kind, true);
    s.scheduler = enum_field(r, "kind", scheduler_kind_from, s.scheduler);
    s.view = enum_field(r, "view", correlation_view_from, CorrelationView::Full);
    r.get("horizon", s.horizon);
    r.get("survivors", s.survivors);
    r.get("playback_delay", s.playback_delay);
    r.get("oracle_cap", s.oracle_cap);
  }
  root.get("seed", s.seed);
  root.get("runs", s.runs);
  return s;
}

}  // namespace

ScenarioConfig parse_scenario(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail("<document>", std::string("malformed JSON: ") + e.what());
  }
  ScenarioConfig s = from_json(doc);
  s.validate();
  return s;
}

std::string scenario_to_json(const ScenarioConfig& s) {
  json overlap = json::object();
  for (const auto& [d, o] : s.correlation.overlap_at_distance) overlap[std::to_string(d)] = o;
  json doc = {
      {"schema_version", kScenarioSchemaVersion},
      {"trace",
       {{"kind", to_string(s.trace_kind)},
        {"cameras", s.cameras},
        {"frames", s.frames},
        {"positions", s.positions},
        {"correlation",
         {{"rho_s", s.correlation.rho_s},
          {"rho_t", s.correlation.rho_t},
          {"overlap_at_distance", overlap},
          {"background_fraction", s.correlation.background_fraction},
          {"content_motion", s.correlation.content_motion},
          {"foreground_track", s.correlation.foreground_track}}}}},
      {"source", {{"rate_bps", s.rate_bps}, {"frame_rate", s.frame_rate}, {"pixels_per_frame", s.pixels_per_frame}}},
      {"rd", {{"mu", s.rd.mu}, {"sigma2", s.rd.sigma2}, {"peak", s.rd.peak}}},
      {"weights", s.weights},
      {"channel", {{"capacity_bps", s.capacity_bps}, {"slot_seconds", s.slot_seconds}}},
      {"scheduler",
       {{"kind", to_string(s.scheduler)},
        {"view", to_string(s.view)},
        {"horizon", s.horizon},
        {"survivors", s.survivors},
        {"playback_delay", s.playback_delay},
        {"oracle_cap", s.oracle_cap}}},
      {"seed", s.seed},
      {"runs", s.runs}};
  return doc.dump(2) + "\n";
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument(path + ": cannot open scenario file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

}  // namespace mvsched
