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

#include "r3/geometry.hpp"

#include "r3/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace r3
{

const char * to_string(Errc code) noexcept
{
  switch (code) {
    case Errc::invalid_geometry:
      return "invalid geometry";
    case Errc::domain:
      return "domain error";
    case Errc::parameter:
      return "invalid parameter";
    case Errc::degenerate_box:
      return "degenerate box";
    case Errc::frame_format:
      return "frame format error";
    case Errc::parse:
      return "parse error";
    case Errc::spec:
      return "scenario spec error";
    case Errc::io:
      return "i/o error";
  }
  return "unknown error";
}

namespace
{

bool finite(Vec2 v) { return std::isfinite(v.x) && std::isfinite(v.y); }

// Projection radius of a box onto a unit axis.
double projected_radius(const OrientedBox & box, Vec2 u, Vec2 axis)
{
  const Vec2 v{-u.y, u.x};
  return 0.5 * box.length * std::abs(dot(u, axis)) + 0.5 * box.width * std::abs(dot(v, axis));
}

}  // namespace

std::array<Vec2, 4> OrientedBox::corners() const
{
  const Vec2 u = axis();
  const Vec2 v{-u.y, u.x};
  const Vec2 hl = u * (0.5 * length);
  const Vec2 hw = v * (0.5 * width);
  return {center + hl + hw, center - hl + hw, center - hl - hw, center + hl - hw};
}

void validate(const OrientedBox & box)
{
  if (!finite(box.center) || !std::isfinite(box.heading)) {
    throw Error(Errc::invalid_geometry, "box pose must be finite");
  }
  if (!std::isfinite(box.length) || !std::isfinite(box.width)) {
    throw Error(Errc::invalid_geometry, "box dimensions must be finite");
  }
  if (box.length <= 0.0 || box.width <= 0.0) {
    throw Error(
      Errc::invalid_geometry, "box dimensions must be positive (length " +
                                std::to_string(box.length) + ", width " +
                                std::to_string(box.width) + ")");
  }
}

bool obb_overlap(const OrientedBox & a, const OrientedBox & b)
{
  validate(a);
  validate(b);

  const Vec2 ua = a.axis();
  const Vec2 ub = b.axis();
  const Vec2 d = b.center - a.center;
  const Vec2 axes[4] = {ua, {-ua.y, ua.x}, ub, {-ub.y, ub.x}};

  for (const Vec2 & axis : axes) {
    const double separation = std::abs(dot(d, axis));
    if (separation > projected_radius(a, ua, axis) + projected_radius(b, ub, axis)) {
      return false;
    }
  }
  return true;
}

double critical_distance(const OrientedBox & a, const OrientedBox & b)
{
  validate(a);
  validate(b);
  return 0.5 * std::hypot(a.length, a.width) + 0.5 * std::hypot(b.length, b.width);
}

Circle existence_region(Vec2 x0, Vec2 v0, double t, double a_max)
{
  if (!(t >= 0.0)) {
    throw Error(Errc::domain, "existence region requires t >= 0");
  }
  if (!(a_max > 0.0) || !std::isfinite(a_max)) {
    throw Error(Errc::parameter, "a_max must be positive and finite");
  }
  if (!finite(x0) || !finite(v0)) {
    throw Error(Errc::invalid_geometry, "existence region inputs must be finite");
  }
  return {x0 + v0 * t, 0.5 * a_max * t * t};
}

double circle_gap(const Circle & a, const Circle & b)
{
  if (!(a.radius >= 0.0) || !(b.radius >= 0.0)) {
    throw Error(Errc::invalid_geometry, "circle radius must be non-negative");
  }
  // Radii summed first so the result is bitwise symmetric.
  return (a.center - b.center).norm() - (a.radius + b.radius);
}

}  // namespace r3
