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

#include "r3/commands.hpp"
#include "r3/error.hpp"
#include "r3/risk.hpp"
#include "r3/scenario.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <set>
#include <string>

namespace r3
{
namespace
{

using test::Rng;

Errc code_of(auto && fn)
{
  try {
    fn();
  } catch (const Error & e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::io;
}

ScenarioSpec spec_of(ScenarioKind kind, std::map<std::string, double> params = {}, int frames = 5)
{
  ScenarioSpec s;
  s.kind = kind;
  s.params = std::move(params);
  s.frames = frames;
  s.seed = 7;
  return s;
}

std::set<RiskRank> target_ranks(const GeneratedScenario & g)
{
  std::set<RiskRank> out;
  for (const auto & e : g.expected) {
    for (const auto & r : e.ranks) {
      if (r.object_id == "target") out.insert(r.rank);
    }
  }
  return out;
}

TEST(Generate, Examples)
{
  const auto head_on = generate(spec_of(ScenarioKind::head_on, {{"gap_front", 4}, {"ego_speed", 5}, {"obj_speed", 5}}));
  EXPECT_EQ(target_ranks(head_on), std::set{RiskRank::imminent});
  const auto far = generate(spec_of(ScenarioKind::parked_far, {{"distance", 100}}));
  EXPECT_EQ(target_ranks(far), std::set{RiskRank::other});
  const auto near = generate(spec_of(ScenarioKind::parked_near, {{"center_distance", 4.7}}));
  EXPECT_EQ(target_ranks(near), std::set{RiskRank::potential});
}

TEST(Generate, Shape)
{
  const auto g = generate(spec_of(ScenarioKind::cut_in, {{"background", 3}}, 4));
  ASSERT_EQ(g.frames.size(), 4u);
  ASSERT_EQ(g.expected.size(), 4u);
  EXPECT_EQ(g.frames[2].frame_id, "cut_in-7-0002");
  EXPECT_EQ(g.frames[2].timestamp, 0.2);
  for (std::size_t i = 0; i < g.frames.size(); ++i) {
    EXPECT_NO_THROW(validate(g.frames[i]));
    EXPECT_EQ(g.expected[i].frame_id, g.frames[i].frame_id);
    ASSERT_EQ(g.frames[i].objects.size(), 4u);
    EXPECT_EQ(g.frames[i].objects[0].object_id, "target");
    EXPECT_EQ(g.frames[i].objects[3].object_id, "bg3");
  }
}

// The sidecar must agree with the risk module wherever the construction is
// unambiguous; the generator refuses to emit boundary cases.
TEST(Generate, SidecarsAgreeWithRiskModule)
{
  Rng rng(51);
  int compared = 0, refused = 0;
  std::set<RiskRank> seen;
  const ScenarioKind kinds[] = {ScenarioKind::head_on, ScenarioKind::crossing, ScenarioKind::parked_near,
                                ScenarioKind::parked_far, ScenarioKind::cut_in};
  for (int i = 0; i < 400; ++i) {
    const ScenarioKind kind = kinds[i % 5];
    ScenarioSpec spec = spec_of(kind, {}, 3);
    spec.seed = static_cast<std::uint64_t>(i);
    spec.params["jitter"] = rng.uniform(0, 1);
    spec.params["background"] = 2;
    spec.risk = {rng.uniform(3, 10), rng.uniform(0, 0.3), rng.uniform(0.02, 0.3)};
    switch (kind) {
      case ScenarioKind::head_on:
        spec.params["gap_front"] = rng.uniform(0, 40);
        spec.params["ego_speed"] = rng.uniform(0, 20);
        spec.params["obj_speed"] = rng.uniform(0, 20);
        spec.params["lateral_offset"] = rng.uniform(-5, 5);
        break;
      case ScenarioKind::crossing:
        spec.params["obj_forward"] = rng.uniform(0, 30);
        spec.params["obj_lateral"] = rng.uniform(0, 30);
        spec.params["ego_speed"] = rng.uniform(0, 20);
        spec.params["obj_speed"] = rng.uniform(0, 20);
        break;
      case ScenarioKind::parked_near:
        spec.params["center_distance"] = rng.uniform(2, 8);
        break;
      case ScenarioKind::parked_far:
        spec.params["distance"] = rng.uniform(20, 200);
        break;
      case ScenarioKind::cut_in:
        spec.params["lead_gap"] = rng.uniform(0, 30);
        spec.params["lane_offset"] = rng.uniform(0, 6);
        spec.params["lateral_speed"] = rng.uniform(0, 4);
        spec.params["ego_speed"] = rng.uniform(0, 30);
        spec.params["obj_speed"] = rng.uniform(0, 30);
        break;
    }
    for (auto & [name, value] : spec.params) {
      for (const auto & p : scenario_parameters(kind)) {
        if (p.name == name) value = std::clamp(value, p.min_value, p.max_value);
      }
    }
    GeneratedScenario g;
    try {
      g = generate(spec);
    } catch (const Error & e) {
      ASSERT_EQ(e.code(), Errc::spec);
      ++refused;
      continue;
    }
    for (std::size_t f = 0; f < g.frames.size(); ++f) {
      ASSERT_EQ(rank_frame(g.frames[f], spec.risk), g.expected[f].ranks) << g.frames[f].frame_id;
      for (const auto & r : g.expected[f].ranks) seen.insert(r.rank);
      ++compared;
    }
  }
  EXPECT_GT(compared, 1000);
  EXPECT_LT(refused, 20);
  EXPECT_EQ(seen.size(), 3u);
}

TEST(Generate, SameSeedSameBytes)
{
  ScenarioSpec spec = spec_of(ScenarioKind::crossing, {{"background", 4}}, 20);
  const GeneratedFiles a = render_scenarios({spec}, true);
  const GeneratedFiles b = render_scenarios({spec}, true);
  EXPECT_EQ(a.frames, b.frames);
  EXPECT_EQ(a.expected, b.expected);
  EXPECT_EQ(a.predictions, b.predictions);
  EXPECT_FALSE(a.predictions.empty());
  spec.seed = 8;
  EXPECT_NE(render_scenarios({spec}, true).frames, a.frames);
  EXPECT_EQ(render_scenarios({spec}, false).predictions, "");
}

TEST(Generate, DuplicateFrameIdsAcrossSpecs)
{
  const ScenarioSpec s = spec_of(ScenarioKind::head_on);
  EXPECT_EQ(code_of([&] { render_scenarios({s, s}, false); }), Errc::spec);
}

TEST(Validate, RejectsBadSpecs)
{
  EXPECT_EQ(code_of([] { validate(spec_of(ScenarioKind::head_on, {{"distance", 10}})); }), Errc::spec);
  EXPECT_EQ(code_of([] { validate(spec_of(ScenarioKind::parked_far, {{"distance", 5}})); }), Errc::spec);
  EXPECT_EQ(code_of([] { validate(spec_of(ScenarioKind::head_on, {{"background", 1.5}})); }), Errc::spec);
  EXPECT_EQ(code_of([] { validate(spec_of(ScenarioKind::head_on, {{"jitter", -1}})); }), Errc::spec);
  EXPECT_EQ(code_of([] { validate(spec_of(ScenarioKind::head_on, {}, 0)); }), Errc::spec);
  ScenarioSpec bad_risk = spec_of(ScenarioKind::head_on);
  bad_risk.risk.a_max = -1;
  EXPECT_EQ(code_of([&] { validate(bad_risk); }), Errc::spec);
  EXPECT_NO_THROW(validate(spec_of(ScenarioKind::cut_in, {{"lead_gap", 20}, {"background", 2}})));
}

TEST(ParseSpecs, Forms)
{
  const auto one = parse_scenario_specs(R"({"kind":"parked_near","seed":3,"frames":2,"params":{"center_distance":4.5}})");
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].kind, ScenarioKind::parked_near);
  EXPECT_EQ(one[0].seed, 3u);
  EXPECT_EQ(one[0].frames, 2);
  EXPECT_EQ(one[0].params.at("center_distance"), 4.5);

  const auto arr = parse_scenario_specs(R"([{"kind":"head_on"},{"kind":"cut_in","risk":{"a_max":6}}])");
  ASSERT_EQ(arr.size(), 2u);
  EXPECT_EQ(arr[1].risk.a_max, 6.0);
  EXPECT_EQ(arr[1].risk.dt, 0.1);

  const auto wrapped = parse_scenario_specs(R"({"scenarios":[{"kind":"crossing"}]})");
  EXPECT_EQ(wrapped.at(0).kind, ScenarioKind::crossing);

  EXPECT_EQ(code_of([] { parse_scenario_specs(R"({"kind":"roundabout"})"); }), Errc::spec);
  EXPECT_EQ(code_of([] { parse_scenario_specs("{"); }), Errc::spec);
  EXPECT_EQ(code_of([] { parse_scenario_specs("[]"); }), Errc::spec);
  EXPECT_EQ(code_of([] { parse_scenario_specs(R"({"kind":"head_on","params":{"gap_front":"far"}})"); }), Errc::spec);
  EXPECT_EQ(parse_scenario_kind("parked_far"), ScenarioKind::parked_far);
  EXPECT_EQ(parse_scenario_kind("Parked_Far"), std::nullopt);
}

TEST(Projection, PinholeProperties)
{
  const WorldState ego = test::car({0, 0}, {0, 0});
  const ImageBox ahead = project_to_image(ego, test::car({20, 0}, {0, 0}), 1.6);
  const ImageBox farther = project_to_image(ego, test::car({40, 0}, {0, 0}), 1.6);
  EXPECT_NEAR(0.5 * (ahead.x_min + ahead.x_max), 960.0, 1e-3);
  EXPECT_LT(farther.y_max - farther.y_min, ahead.y_max - ahead.y_min);
  EXPECT_LT(farther.x_max - farther.x_min, ahead.x_max - ahead.x_min);
  // Ground contact lies below the principal point.
  EXPECT_GT(ahead.y_max, 640.0);
  const ImageBox left = project_to_image(ego, test::car({20, 5}, {0, 0}), 1.6);
  EXPECT_LT(left.x_max, ahead.x_max);
  EXPECT_NO_THROW(validate(project_to_image(ego, test::car({-30, 3}, {0, 0}), 1.6)));
}

TEST(SyntheticDetections, DeterministicAndValid)
{
  const auto g = generate(spec_of(ScenarioKind::head_on, {{"background", 5}}, 30));
  const auto a = synthesize_predictions(g.frames, 3);
  EXPECT_EQ(a, synthesize_predictions(g.frames, 3));
  EXPECT_NE(a, synthesize_predictions(g.frames, 4));
  ASSERT_FALSE(a.empty());
  std::set<std::string> ids;
  for (const auto & f : g.frames) ids.insert(f.frame_id);
  for (const auto & [fid, p] : a) {
    EXPECT_TRUE(ids.count(fid));
    EXPECT_NO_THROW(validate(p.box));
    EXPECT_GE(p.confidence, 0.0);
    EXPECT_LE(p.confidence, 1.0);
  }
}

}  // namespace
}  // namespace r3
