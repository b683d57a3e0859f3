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

#ifndef R3__GEOMETRY_HPP_
#define R3__GEOMETRY_HPP_

#include <array>
#include <cmath>

namespace r3
{

/// Ground-plane vector. Used for positions (m) and velocities (m/s).
struct Vec2
{
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr bool operator==(const Vec2 &) const = default;

  double norm() const { return std::hypot(x, y); }
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

/// Rectangle in the ground plane. `length` runs along the heading and
/// `width` across it. Headings are unrestricted radians.
struct OrientedBox
{
  Vec2 center;
  double heading = 0.0;
  double length = 0.0;
  double width = 0.0;

  bool operator==(const OrientedBox &) const = default;

  /// Unit vector along the heading.
  Vec2 axis() const { return {std::cos(heading), std::sin(heading)}; }
  /// Corners in counter-clockwise order starting at front-left.
  std::array<Vec2, 4> corners() const;
};

/// Disk in the ground plane.
struct Circle
{
  Vec2 center;
  double radius = 0.0;

  bool operator==(const Circle &) const = default;
};

/// Throws Error(Errc::invalid_geometry) unless the box has finite fields and
/// positive dimensions.
void validate(const OrientedBox & box);

/// Closed-rectangle intersection test via separating axes. Boxes that only
/// touch are reported as overlapping.
bool obb_overlap(const OrientedBox & a, const OrientedBox & b);

/// Largest center distance at which the two footprints can still touch over
/// all relative rotations: the sum of the half-diagonals. Only dimensions
/// are used.
double critical_distance(const OrientedBox & a, const OrientedBox & b);

/// Set of reachable center positions at time `t` when starting at `x0` with
/// velocity `v0` and any acceleration of magnitude up to `a_max`.
Circle existence_region(Vec2 x0, Vec2 v0, double t, double a_max);

/// Signed distance between two disks; negative when they overlap.
double circle_gap(const Circle & a, const Circle & b);

}  // namespace r3

#endif  // R3__GEOMETRY_HPP_
