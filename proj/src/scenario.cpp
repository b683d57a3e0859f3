// Copyright 2026 The r3eval Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "r3/scenario.hpp"

#include "r3/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "json.hpp"

namespace r3
{

namespace
{

constexpr double kFocalPx = 1000.0;
constexpr double kPrincipalU = 960.0;
constexpr double kPrincipalV = 640.0;
constexpr double kCameraHeight = 1.5;
constexpr double kMinDepth = 1.0;
constexpr double kVehicleHeight = 1.6;
constexpr double kImageWidth = 1920.0;
constexpr double kImageHeight = 1280.0;
// Closer than this to a rank boundary and the generator refuses the frame.
constexpr double kBoundaryMargin = 1e-9;

struct KindInfo
{
  ScenarioKind kind;
  const char * name;
};

constexpr KindInfo kKinds[] = {
  {ScenarioKind::head_on, "head_on"},
  {ScenarioKind::crossing, "crossing"},
  {ScenarioKind::parked_near, "parked_near"},
  {ScenarioKind::parked_far, "parked_far"},
  {ScenarioKind::cut_in, "cut_in"},
};

// Uniform in [0, 1) from the top 53 bits; unlike the standard
// distributions this is identical across standard library implementations.
double unit_uniform(std::mt19937_64 & rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double uniform(std::mt19937_64 & rng, double lo, double hi) { return lo + (hi - lo) * unit_uniform(rng); }

// Rounds to `decimals` places; yields the double nearest the decimal value.
double round_to(double v, int decimals)
{
  const double scale = std::pow(10.0, decimals);
  return std::round(v * scale) / scale;
}

class Params
{
public:
  explicit Params(const ScenarioSpec & spec) : spec_(spec), table_(scenario_parameters(spec.kind)) {}

  double operator()(const std::string & name) const
  {
    if (auto it = spec_.params.find(name); it != spec_.params.end()) return it->second;
    for (const auto & p : table_) {
      if (p.name == name) return p.default_value;
    }
    throw Error(Errc::spec, "unknown scenario parameter '" + name + "'");
  }

private:
  const ScenarioSpec & spec_;
  std::vector<ScenarioParameter> table_;
};

// Footprint of an axis-aligned box as half extents along world x and y.
struct AxisBox
{
  Vec2 position;
  Vec2 velocity;
  double half_x;
  double half_y;
  double half_diagonal;
};

AxisBox axis_box(const WorldState & s)
{
  const double quarter_turns = s.heading / (std::numbers::pi / 2.0);
  const double k = std::round(quarter_turns);
  if (std::abs(quarter_turns - k) > 1e-12) {
    throw Error(Errc::spec, "scenario headings must be multiples of pi/2");
  }
  const bool along_x = static_cast<long long>(k) % 2 == 0;
  return {
    s.position, s.velocity, 0.5 * (along_x ? s.length : s.width),
    0.5 * (along_x ? s.width : s.length), 0.5 * std::sqrt(s.length * s.length + s.width * s.width)};
}

// Sample instants of the horizon: multiples of dt below the horizon, then
// the horizon itself.
std::vector<double> horizon_samples(const WorldState & ego, const RiskParams & risk)
{
  const double speed = std::sqrt(ego.velocity.x * ego.velocity.x + ego.velocity.y * ego.velocity.y);
  const double horizon = (speed + risk.a_max * risk.l_comp) / risk.a_max + risk.l_comp;
  std::vector<double> samples{0.0};
  for (int k = 1; static_cast<double>(k) * risk.dt < horizon - 1e-9 * risk.dt; ++k) {
    samples.push_back(static_cast<double>(k) * risk.dt);
  }
  if (horizon > 0.0) samples.push_back(horizon);
  return samples;
}

enum class Decision
{
  yes,
  no,
  ambiguous,
};

// `margin` is positive where the condition holds.
template <typename Margin>
Decision any_sample(const std::vector<double> & samples, Margin margin)
{
  bool near_boundary = false;
  for (double t : samples) {
    const double m = margin(t);
    if (m > kBoundaryMargin) return Decision::yes;
    if (m >= -kBoundaryMargin) near_boundary = true;
  }
  return near_boundary ? Decision::ambiguous : Decision::no;
}

RiskRank expected_rank(
  const WorldState & ego_state, const WorldState & obj_state, const RiskParams & risk,
  const std::string & context)
{
  const AxisBox ego = axis_box(ego_state);
  const AxisBox obj = axis_box(obj_state);
  const Vec2 p0 = obj.position - ego.position;
  const Vec2 w = obj.velocity - ego.velocity;
  const std::vector<double> samples = horizon_samples(ego_state, risk);

  // Axis-aligned rectangles overlap iff both per-axis gaps are closed.
  const Decision imminent = any_sample(samples, [&](double t) {
    const double gx = ego.half_x + obj.half_x - std::abs(p0.x + w.x * t);
    const double gy = ego.half_y + obj.half_y - std::abs(p0.y + w.y * t);
    return std::min(gx, gy);
  });
  if (imminent == Decision::ambiguous) {
    throw Error(Errc::spec, context + ": box contact lies on the imminent boundary");
  }
  if (imminent == Decision::yes) return RiskRank::imminent;

  // Both existence radii are a t^2 / 2, so the disks close by a t^2.
  const double d_crit = ego.half_diagonal + obj.half_diagonal;
  const Decision potential = any_sample(samples, [&](double t) {
    const double dx = p0.x + w.x * t;
    const double dy = p0.y + w.y * t;
    const double gap = std::sqrt(dx * dx + dy * dy) - risk.a_max * t * t;
    return d_crit - gap;
  });
  if (potential == Decision::ambiguous) {
    throw Error(Errc::spec, context + ": region gap lies on the potential boundary");
  }
  return potential == Decision::yes ? RiskRank::potential : RiskRank::other;
}

WorldState target_state(ScenarioKind kind, const Params & p)
{
  WorldState s;
  s.length = p("obj_length");
  s.width = p("obj_width");
  switch (kind) {
    case ScenarioKind::head_on:
      s.position = {0.5 * p("ego_length") + p("gap_front") + 0.5 * s.length, p("lateral_offset")};
      s.velocity = {-p("obj_speed"), 0.0};
      s.heading = std::numbers::pi;
      break;
    case ScenarioKind::crossing:
      s.position = {p("obj_forward"), -p("obj_lateral")};
      s.velocity = {0.0, p("obj_speed")};
      s.heading = std::numbers::pi / 2.0;
      break;
    case ScenarioKind::parked_near:
      s.position = {p("center_distance"), 0.0};
      break;
    case ScenarioKind::parked_far:
      s.position = {p("distance"), 0.0};
      break;
    case ScenarioKind::cut_in:
      s.position = {p("lead_gap"), p("lane_offset")};
      s.velocity = {p("obj_speed"), -p("lateral_speed")};
      break;
  }
  return s;
}

std::string frame_name(ScenarioKind kind, std::uint64_t seed, int index)
{
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d", index);
  return std::string(to_string(kind)) + "-" + std::to_string(seed) + "-" + buf;
}

}  // namespace

std::string_view to_string(ScenarioKind kind)
{
  for (const auto & k : kKinds) {
    if (k.kind == kind) return k.name;
  }
  return "unknown";
}

std::optional<ScenarioKind> parse_scenario_kind(std::string_view name)
{
  for (const auto & k : kKinds) {
    if (name == k.name) return k.kind;
  }
  return std::nullopt;
}

std::vector<ScenarioParameter> scenario_parameters(ScenarioKind kind)
{
  std::vector<ScenarioParameter> table{
    {"ego_length", 4.0, 0.3, 20.0},
    {"ego_width", 2.0, 0.3, 5.0},
    {"obj_length", 4.0, 0.3, 20.0},
    {"obj_width", 2.0, 0.3, 5.0},
    {"jitter", 0.02, 0.0, 1.0},
    {"background", 0.0, 0.0, 20.0},
  };
  auto add = [&table](ScenarioParameter p) { table.push_back(std::move(p)); };
  switch (kind) {
    case ScenarioKind::head_on:
      add({"ego_speed", 5.0, 0.0, 50.0});
      add({"obj_speed", 5.0, 0.0, 50.0});
      add({"gap_front", 4.0, 0.0, 500.0});
      add({"lateral_offset", 0.0, -20.0, 20.0});
      break;
    case ScenarioKind::crossing:
      add({"ego_speed", 10.0, 0.0, 50.0});
      add({"obj_speed", 10.0, 0.0, 50.0});
      add({"obj_forward", 12.0, 0.0, 500.0});
      add({"obj_lateral", 12.0, 0.0, 500.0});
      break;
    case ScenarioKind::parked_near:
      add({"ego_speed", 0.0, 0.0, 50.0});
      add({"center_distance", 4.7, 0.0, 50.0});
      break;
    case ScenarioKind::parked_far:
      add({"ego_speed", 0.0, 0.0, 50.0});
      add({"distance", 100.0, 20.0, 2000.0});
      break;
    case ScenarioKind::cut_in:
      add({"ego_speed", 20.0, 0.0, 50.0});
      add({"obj_speed", 15.0, 0.0, 50.0});
      add({"lead_gap", 8.0, 0.0, 500.0});
      add({"lane_offset", 3.5, 0.0, 20.0});
      add({"lateral_speed", 1.5, 0.0, 10.0});
      break;
  }
  return table;
}

void validate(const ScenarioSpec & spec)
{
  if (spec.frames < 1 || spec.frames > 1000000) {
    throw Error(Errc::spec, "scenario frame count must lie in [1, 1000000]");
  }
  try {
    validate(spec.risk);
  } catch (const Error & e) {
    throw Error(Errc::spec, e.what());
  }
  const auto table = scenario_parameters(spec.kind);
  for (const auto & [name, value] : spec.params) {
    auto it = std::find_if(table.begin(), table.end(), [&](const auto & p) { return p.name == name; });
    if (it == table.end()) {
      throw Error(
        Errc::spec,
        "parameter '" + name + "' is not accepted by kind '" + std::string(to_string(spec.kind)) + "'");
    }
    if (!std::isfinite(value) || value < it->min_value || value > it->max_value) {
      throw Error(
        Errc::spec, "parameter '" + name + "' = " + std::to_string(value) + " is outside [" +
                      std::to_string(it->min_value) + ", " + std::to_string(it->max_value) + "]");
    }
  }
  if (auto it = spec.params.find("background"); it != spec.params.end() && it->second != std::floor(it->second)) {
    throw Error(Errc::spec, "parameter 'background' must be an integer");
  }
}

std::vector<ScenarioSpec> parse_scenario_specs(const std::string & json_text)
{
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error & e) {
    throw Error(Errc::spec, std::string("malformed scenario spec: ") + e.what());
  }

  auto one = [](const json & j) {
    if (!j.is_object()) throw Error(Errc::spec, "scenario spec must be an object");
    ScenarioSpec spec;
    try {
      const std::string name = j.at("kind").get<std::string>();
      auto kind = parse_scenario_kind(name);
      if (!kind) throw Error(Errc::spec, "unknown scenario kind '" + name + "'");
      spec.kind = *kind;
      spec.seed = j.value("seed", std::uint64_t{0});
      spec.frames = j.value("frames", 1);
      if (j.contains("params")) {
        for (const auto & [key, value] : j.at("params").items()) {
          spec.params[key] = value.get<double>();
        }
      }
      if (j.contains("risk")) {
        const json & r = j.at("risk");
        spec.risk.a_max = r.value("a_max", spec.risk.a_max);
        spec.risk.l_comp = r.value("l_comp", spec.risk.l_comp);
        spec.risk.dt = r.value("dt", spec.risk.dt);
      }
    } catch (const json::exception & e) {
      throw Error(Errc::spec, std::string("invalid scenario spec: ") + e.what());
    }
    validate(spec);
    return spec;
  };

  std::vector<ScenarioSpec> specs;
  const json * list = &doc;
  if (doc.is_object() && doc.contains("scenarios")) list = &doc.at("scenarios");
  if (list->is_array()) {
    for (const auto & j : *list) specs.push_back(one(j));
  } else {
    specs.push_back(one(*list));
  }
  if (specs.empty()) throw Error(Errc::spec, "scenario spec lists no scenarios");
  return specs;
}

ImageBox project_to_image(const WorldState & ego, const WorldState & obj, double object_height)
{
  const double c = std::cos(ego.heading);
  const double s = std::sin(ego.heading);
  const OrientedBox footprint{obj.position, obj.heading, obj.length, obj.width};

  ImageBox box{
    std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
    -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const Vec2 & corner : footprint.corners()) {
    const Vec2 d = corner - ego.position;
    const double forward = c * d.x + s * d.y;
    const double left = -s * d.x + c * d.y;
    const double depth = std::max(forward, kMinDepth);
    const double u = kPrincipalU - kFocalPx * left / depth;
    const double v_ground = kPrincipalV + kFocalPx * kCameraHeight / depth;
    const double v_top = kPrincipalV + kFocalPx * (kCameraHeight - object_height) / depth;
    box.x_min = std::min(box.x_min, u);
    box.x_max = std::max(box.x_max, u);
    box.y_min = std::min(box.y_min, v_top);
    box.y_max = std::max(box.y_max, v_ground);
  }
  box.x_min = round_to(box.x_min, 3);
  box.y_min = round_to(box.y_min, 3);
  box.x_max = std::max(round_to(box.x_max, 3), box.x_min + 1e-3);
  box.y_max = std::max(round_to(box.y_max, 3), box.y_min + 1e-3);
  return box;
}

GeneratedScenario generate(const ScenarioSpec & spec)
{
  validate(spec);
  const Params p(spec);
  std::mt19937_64 rng(spec.seed);

  GeneratedScenario out;
  out.frames.reserve(static_cast<std::size_t>(spec.frames));
  out.expected.reserve(static_cast<std::size_t>(spec.frames));

  const double jitter = p("jitter");
  const int background = static_cast<int>(p("background"));

  for (int i = 0; i < spec.frames; ++i) {
    Frame frame;
    frame.frame_id = frame_name(spec.kind, spec.seed, i);
    frame.timestamp = round_to(0.1 * i, 9);

    WorldState ego;
    ego.velocity = {p("ego_speed"), 0.0};
    ego.length = p("ego_length");
    ego.width = p("ego_width");
    frame.ego = ego;

    FrameRanks expected{frame.frame_id, {}};
    auto add_object = [&](const std::string & id, WorldState state) {
      state.position.x = round_to(state.position.x, 6);
      state.position.y = round_to(state.position.y, 6);
      GroundTruthObject obj;
      obj.object_id = id;
      obj.class_label = "Vehicle";
      obj.world = state;
      obj.image_box = project_to_image(ego, state, kVehicleHeight);
      expected.ranks.push_back(
        {id, expected_rank(ego, state, spec.risk, "frame '" + frame.frame_id + "' object '" + id + "'")});
      frame.objects.push_back(std::move(obj));
    };

    WorldState target = target_state(spec.kind, p);
    target.position.x += uniform(rng, -jitter, jitter);
    target.position.y += uniform(rng, -jitter, jitter);
    add_object("target", target);

    for (int b = 0; b < background; ++b) {
      WorldState parked;
      parked.length = 4.5;
      parked.width = 1.9;
      const double side = unit_uniform(rng) < 0.5 ? -1.0 : 1.0;
      parked.position = {uniform(rng, -150.0, 150.0), side * uniform(rng, 40.0, 120.0)};
      parked.heading = unit_uniform(rng) < 0.5 ? 0.0 : std::numbers::pi / 2.0;
      add_object("bg" + std::to_string(b + 1), parked);
    }

    out.frames.push_back(std::move(frame));
    out.expected.push_back(std::move(expected));
  }
  return out;
}

std::vector<std::pair<std::string, Prediction>> synthesize_predictions(
  const std::vector<Frame> & frames, std::uint64_t seed)
{
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<std::pair<std::string, Prediction>> out;
  for (const Frame & frame : frames) {
    for (const auto & obj : frame.objects) {
      const ImageBox & gt = obj.image_box;
      const double w = gt.x_max - gt.x_min;
      const double h = gt.y_max - gt.y_min;
      const double p_detect = 0.35 + 0.6 * std::min(1.0, h / 200.0);
      const double draw = unit_uniform(rng);
      // Perturbations are drawn unconditionally so the stream stays aligned.
      const double d[4] = {
        uniform(rng, -0.06, 0.06) * w, uniform(rng, -0.06, 0.06) * h, uniform(rng, -0.06, 0.06) * w,
        uniform(rng, -0.06, 0.06) * h};
      const double confidence = round_to(0.45 + 0.55 * unit_uniform(rng), 3);
      if (draw >= p_detect) continue;
      Prediction pred;
      pred.box = {
        round_to(gt.x_min + d[0], 3), round_to(gt.y_min + d[1], 3),
        round_to(gt.x_max + d[2], 3), round_to(gt.y_max + d[3], 3)};
      if (!(pred.box.x_min < pred.box.x_max) || !(pred.box.y_min < pred.box.y_max)) pred.box = gt;
      pred.confidence = std::min(1.0, confidence);
      pred.class_label = obj.class_label;
      out.emplace_back(frame.frame_id, std::move(pred));
    }
    if (unit_uniform(rng) < 0.3) {
      const double bw = uniform(rng, 20.0, 200.0);
      const double bh = uniform(rng, 20.0, 200.0);
      const double x = uniform(rng, 0.0, kImageWidth - bw);
      const double y = uniform(rng, 0.0, kImageHeight - bh);
      Prediction fp;
      fp.box = {
        round_to(x, 3), round_to(y, 3), round_to(x + bw, 3), round_to(y + bh, 3)};
      fp.confidence = round_to(uniform(rng, 0.3, 0.9), 3);
      fp.class_label = "Vehicle";
      out.emplace_back(frame.frame_id, std::move(fp));
    }
  }
  return out;
}

}  // namespace r3
