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

#ifndef R3__RISK_HPP_
#define R3__RISK_HPP_

#include "r3/geometry.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace r3
{

struct Frame;

/// Ground-plane pose, kinematics and footprint of the ego vehicle or an
/// object at the frame instant.
struct WorldState
{
  Vec2 position;
  Vec2 velocity;
  double heading = 0.0;
  double length = 0.0;
  double width = 0.0;

  bool operator==(const WorldState &) const = default;
};

void validate(const WorldState & state);

struct RiskParams
{
  double a_max = 7.5;   // m/s^2, worst-case acceleration magnitude
  double l_comp = 0.1;  // s, sensor-to-actuation latency
  double dt = 0.1;      // s, time grid step

  bool operator==(const RiskParams &) const = default;
};

void validate(const RiskParams & params);

/// Collision-risk rank. Lower value means higher risk.
enum class RiskRank : int
{
  imminent = 1,
  potential = 2,
  other = 3,
};

inline constexpr RiskRank kAllRanks[] = {RiskRank::imminent, RiskRank::potential, RiskRank::other};

constexpr int rank_index(RiskRank r) { return static_cast<int>(r) - 1; }
std::string_view to_string(RiskRank rank);
std::optional<RiskRank> parse_rank(std::string_view name);

/// Time for the ego vehicle to come to a full stop from the frame instant,
/// including the compute latency before braking starts.
double time_to_stop(Vec2 ego_velocity, const RiskParams & params);

/// Sample times in [0, tts]: multiples of dt plus tts itself.
struct TimeGrid
{
  double tts = 0.0;
  std::vector<double> steps;
};

TimeGrid make_time_grid(double tts, double dt);

/// Box at time t under constant velocity and heading.
OrientedBox propagate_box(const WorldState & state, double t);

bool is_imminent(const WorldState & ego, const WorldState & obj, const RiskParams & params);
bool is_potential(const WorldState & ego, const WorldState & obj, const RiskParams & params);
RiskRank rank_object(const WorldState & ego, const WorldState & obj, const RiskParams & params);

struct ObjectRank
{
  std::string object_id;
  RiskRank rank = RiskRank::other;

  bool operator==(const ObjectRank &) const = default;
};

/// Ranks every object of the frame, in frame order.
std::vector<ObjectRank> rank_frame(const Frame & frame, const RiskParams & params);

}  // namespace r3

#endif  // R3__RISK_HPP_
