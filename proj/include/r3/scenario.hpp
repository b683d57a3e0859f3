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

#ifndef R3__SCENARIO_HPP_
#define R3__SCENARIO_HPP_

#include "r3/frame.hpp"
#include "r3/ingest.hpp"
#include "r3/risk.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace r3
{

enum class ScenarioKind
{
  head_on,
  crossing,
  parked_near,
  parked_far,
  cut_in,
};

std::string_view to_string(ScenarioKind kind);
std::optional<ScenarioKind> parse_scenario_kind(std::string_view name);

/// Synthetic scenario description. `params` overrides the per-kind defaults
/// listed by scenario_parameters(); unknown names and out-of-range values
/// are rejected by validate().
struct ScenarioSpec
{
  ScenarioKind kind = ScenarioKind::head_on;
  std::map<std::string, double> params;
  std::uint64_t seed = 0;
  int frames = 1;
  /// Parameters the expected ranks are derived for.
  RiskParams risk;
};

struct ScenarioParameter
{
  std::string name;
  double default_value;
  double min_value;
  double max_value;
};

/// Accepted parameters for a kind, including the shared ones (ego/object
/// dimensions, position jitter, number of background objects).
std::vector<ScenarioParameter> scenario_parameters(ScenarioKind kind);

void validate(const ScenarioSpec & spec);

/// Parses one spec object, a JSON array of spec objects, or an object with a
/// "scenarios" array.
std::vector<ScenarioSpec> parse_scenario_specs(const std::string & json_text);

struct GeneratedScenario
{
  std::vector<Frame> frames;
  std::vector<FrameRanks> expected;
};

/// Builds the frames and their expected ranks. Expected ranks come from
/// closed-form per-axis extents of the axis-aligned construction and never
/// from the risk module. Throws Error(Errc::spec) when a jittered frame
/// lands within 1e-9 of a rank boundary.
GeneratedScenario generate(const ScenarioSpec & spec);

/// Fixed pinhole mapping from ground-plane footprints to image boxes: camera
/// at the ego center looking along the ego heading, focal length 1000 px,
/// principal point (960, 640), mounted 1.5 m above ground, depth clamped to
/// at least 1 m.
ImageBox project_to_image(const WorldState & ego, const WorldState & obj, double object_height);

/// Deterministic stand-in for a detector: each ground truth is detected with
/// a probability growing with its image height, detections are perturbed
/// copies of the ground truth box, and occasional false positives are added.
std::vector<std::pair<std::string, Prediction>> synthesize_predictions(
  const std::vector<Frame> & frames, std::uint64_t seed);

}  // namespace r3

#endif  // R3__SCENARIO_HPP_
