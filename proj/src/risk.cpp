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

#include "r3/risk.hpp"

#include "r3/error.hpp"
#include "r3/frame.hpp"

#include <cmath>
#include <string>
#include <unordered_set>

namespace r3
{

void validate(const WorldState & s)
{
  const bool finite = std::isfinite(s.position.x) && std::isfinite(s.position.y) &&
                      std::isfinite(s.velocity.x) && std::isfinite(s.velocity.y) &&
                      std::isfinite(s.heading) && std::isfinite(s.length) &&
                      std::isfinite(s.width);
  if (!finite) {
    throw Error(Errc::invalid_geometry, "world state must be finite");
  }
  if (s.length <= 0.0 || s.width <= 0.0) {
    throw Error(Errc::invalid_geometry, "world state dimensions must be positive");
  }
}

void validate(const RiskParams & p)
{
  if (!(p.a_max > 0.0) || !std::isfinite(p.a_max)) {
    throw Error(Errc::parameter, "a_max must be positive");
  }
  if (!(p.l_comp >= 0.0) || !std::isfinite(p.l_comp)) {
    throw Error(Errc::parameter, "l_comp must be non-negative");
  }
  if (!(p.dt > 0.0) || !std::isfinite(p.dt)) {
    throw Error(Errc::parameter, "dt must be positive");
  }
}

std::string_view to_string(RiskRank rank)
{
  switch (rank) {
    case RiskRank::imminent:
      return "imminent";
    case RiskRank::potential:
      return "potential";
    case RiskRank::other:
      return "other";
  }
  return "other";
}

std::optional<RiskRank> parse_rank(std::string_view name)
{
  for (RiskRank r : kAllRanks) {
    if (to_string(r) == name) return r;
  }
  return std::nullopt;
}

double time_to_stop(Vec2 ego_velocity, const RiskParams & params)
{
  validate(params);
  // |v_e(0) + a_max * l_comp| read as speed plus the speed gained while the
  // stack is still computing.
  const double speed_at_brake = ego_velocity.norm() + params.a_max * params.l_comp;
  return speed_at_brake / params.a_max + params.l_comp;
}

TimeGrid make_time_grid(double tts, double dt)
{
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw Error(Errc::parameter, "time grid step must be positive");
  }
  if (!(tts >= 0.0) || !std::isfinite(tts)) {
    throw Error(Errc::domain, "time horizon must be non-negative");
  }
  TimeGrid grid{tts, {}};
  // Multiples within a relative hair of tts are replaced by tts itself.
  const double limit = tts - 1e-9 * dt;
  for (std::size_t i = 0;; ++i) {
    const double t = static_cast<double>(i) * dt;
    if (i > 0 && t >= limit) break;
    grid.steps.push_back(t);
    if (tts == 0.0) return grid;
  }
  grid.steps.push_back(tts);
  return grid;
}

OrientedBox propagate_box(const WorldState & state, double t)
{
  if (!(t >= 0.0)) {
    throw Error(Errc::domain, "propagation time must be non-negative");
  }
  return {state.position + state.velocity * t, state.heading, state.length, state.width};
}

bool is_imminent(const WorldState & ego, const WorldState & obj, const RiskParams & params)
{
  validate(ego);
  validate(obj);
  const TimeGrid grid = make_time_grid(time_to_stop(ego.velocity, params), params.dt);
  for (double t : grid.steps) {
    if (obb_overlap(propagate_box(ego, t), propagate_box(obj, t))) {
      return true;
    }
  }
  return false;
}

bool is_potential(const WorldState & ego, const WorldState & obj, const RiskParams & params)
{
  validate(ego);
  validate(obj);
  const double d_crit = critical_distance(propagate_box(ego, 0.0), propagate_box(obj, 0.0));
  const TimeGrid grid = make_time_grid(time_to_stop(ego.velocity, params), params.dt);
  for (double t : grid.steps) {
    const Circle ego_region = existence_region(ego.position, ego.velocity, t, params.a_max);
    const Circle obj_region = existence_region(obj.position, obj.velocity, t, params.a_max);
    if (circle_gap(ego_region, obj_region) < d_crit) {
      return true;
    }
  }
  return false;
}

RiskRank rank_object(const WorldState & ego, const WorldState & obj, const RiskParams & params)
{
  if (is_imminent(ego, obj, params)) return RiskRank::imminent;
  if (is_potential(ego, obj, params)) return RiskRank::potential;
  return RiskRank::other;
}

std::vector<ObjectRank> rank_frame(const Frame & frame, const RiskParams & params)
{
  validate(params);
  if (!frame.ego) {
    throw Error(Errc::frame_format, "frame '" + frame.frame_id + "' has no ego state");
  }
  std::unordered_set<std::string> ids;
  std::vector<ObjectRank> ranks;
  ranks.reserve(frame.objects.size());
  for (const GroundTruthObject & obj : frame.objects) {
    if (!ids.insert(obj.object_id).second) {
      throw Error(
        Errc::frame_format,
        "frame '" + frame.frame_id + "' repeats object id '" + obj.object_id + "'");
    }
    ranks.push_back({obj.object_id, rank_object(*frame.ego, obj.world, params)});
  }
  return ranks;
}

}  // namespace r3
