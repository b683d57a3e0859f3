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

#include "r3/error.hpp"
#include "r3/geometry.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

namespace r3
{
namespace
{

using test::Rng;

OrientedBox box(double x, double y, double heading, double length, double width)
{
  return {{x, y}, heading, length, width};
}

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

TEST(ObbOverlap, Examples)
{
  EXPECT_TRUE(obb_overlap(box(0, 0, 0, 4, 2), box(0, 0, 0.7, 4, 2)));
  EXPECT_FALSE(obb_overlap(box(0, 0, 0, 4, 2), box(10, 0, 0, 4, 2)));
  EXPECT_TRUE(obb_overlap(box(0, 0, 0, 4, 2), box(3.9, 0, 0, 4, 2)));
  EXPECT_TRUE(test::sampled_overlap(box(0, 0, 0, 4, 2), box(3.9, 0, 0, 4, 2)));
}

TEST(ObbOverlap, TouchingEdgesCount)
{
  EXPECT_TRUE(obb_overlap(box(0, 0, 0, 4, 2), box(4, 0, 0, 4, 2)));
  EXPECT_TRUE(obb_overlap(box(0, 0, 0, 4, 2), box(4, 2, 0, 4, 2)));
  EXPECT_FALSE(obb_overlap(box(0, 0, 0, 4, 2), box(4.001, 0, 0, 4, 2)));
}

TEST(ObbOverlap, ContainmentWithoutEdgeCrossing)
{
  EXPECT_TRUE(obb_overlap(box(0, 0, 0.3, 10, 10), box(1, 1, 1.1, 1, 0.5)));
  EXPECT_TRUE(obb_overlap(box(1, 1, 1.1, 1, 0.5), box(0, 0, 0.3, 10, 10)));
}

TEST(ObbOverlap, RejectsInvalidBoxes)
{
  const OrientedBox ok = box(0, 0, 0, 4, 2);
  EXPECT_EQ(code_of([&] { obb_overlap(ok, box(0, 0, 0, 0, 2)); }), Errc::invalid_geometry);
  EXPECT_EQ(code_of([&] { obb_overlap(box(0, 0, 0, 4, -1), ok); }), Errc::invalid_geometry);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  EXPECT_EQ(code_of([&] { obb_overlap(ok, box(nan, 0, 0, 4, 2)); }), Errc::invalid_geometry);
  EXPECT_EQ(code_of([&] { obb_overlap(ok, box(0, 0, nan, 4, 2)); }), Errc::invalid_geometry);
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_EQ(code_of([&] { obb_overlap(ok, box(0, 0, 0, inf, 2)); }), Errc::invalid_geometry);
}

TEST(ObbOverlap, CornersAreCounterClockwiseFromFrontLeft)
{
  const auto c = box(1, 2, 0, 4, 2).corners();
  EXPECT_EQ(c[0], (Vec2{3, 3}));
  EXPECT_EQ(c[1], (Vec2{-1, 3}));
  EXPECT_EQ(c[2], (Vec2{-1, 1}));
  EXPECT_EQ(c[3], (Vec2{3, 1}));
}

TEST(ObbOverlap, SymmetricOverRandomPairs)
{
  Rng rng(11);
  for (int i = 0; i < 2000; ++i) {
    const OrientedBox a = test::random_box(rng);
    const OrientedBox b = test::random_box(rng);
    ASSERT_EQ(obb_overlap(a, b), obb_overlap(b, a)) << i;
  }
}

TEST(ObbOverlap, HeadingPeriodicity)
{
  Rng rng(12);
  int checked = 0;
  for (int i = 0; i < 2000; ++i) {
    const OrientedBox a = test::random_box(rng);
    OrientedBox b = test::random_box(rng);
    if (std::abs(test::signed_clearance(a, b)) <= 1e-6) continue;
    const bool base = obb_overlap(a, b);
    b.heading += 2.0 * std::numbers::pi;
    ASSERT_EQ(obb_overlap(a, b), base) << i;
    b.heading -= 6.0 * std::numbers::pi;
    ASSERT_EQ(obb_overlap(a, b), base) << i;
    ++checked;
  }
  EXPECT_GT(checked, 1900);
}

TEST(ObbOverlap, RigidMotionInvariance)
{
  Rng rng(13);
  int checked = 0;
  for (int i = 0; i < 2000; ++i) {
    const OrientedBox a = test::random_box(rng);
    const OrientedBox b = test::random_box(rng);
    // Rounding after the transform moves coordinates by ~1e-12; skip pairs
    // that are that close to touching.
    if (std::abs(test::signed_clearance(a, b)) <= 1e-6) continue;
    const test::RigidMotion m{rng.angle(), rng.point(-1000.0, 1000.0)};
    ASSERT_EQ(obb_overlap(m.apply(a), m.apply(b)), obb_overlap(a, b)) << i;
    ++checked;
  }
  EXPECT_GT(checked, 1900);
}

TEST(ObbOverlap, AgreesWithPointSamplingOracle)
{
  Rng rng(14);
  int checked = 0, overlapping = 0;
  for (int i = 0; i < 400; ++i) {
    const OrientedBox a = test::random_box(rng);
    const OrientedBox b = test::random_box(rng);
    if (std::abs(test::signed_clearance(a, b)) <= 1e-3) continue;
    const bool expected = test::sampled_overlap(a, b);
    ASSERT_EQ(obb_overlap(a, b), expected) << "pair " << i;
    ++checked;
    overlapping += expected;
  }
  EXPECT_GT(checked, 390);
  // Both outcomes are well represented.
  EXPECT_GT(overlapping, 20);
  EXPECT_LT(overlapping, checked - 20);
}

TEST(CriticalDistance, Examples)
{
  EXPECT_NEAR(critical_distance(box(0, 0, 0, 4, 2), box(7, 7, 1, 4, 2)), std::sqrt(20.0), 1e-12);
  EXPECT_NEAR(
    critical_distance(box(0, 0, 0, 4, 2), box(0, 0, 0, 1, 1)),
    0.5 * std::sqrt(20.0) + 0.5 * std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(critical_distance(box(0, 0, 0, 4, 2), box(0, 0, 0, 1, 1)), 2.943175, 1e-6);
  EXPECT_EQ(
    critical_distance(box(0, 0, 0, 4, 2), box(0, 0, 0, 3, 5)),
    critical_distance(box(0, 0, 0, 2, 4), box(0, 0, 0, 5, 3)));
  EXPECT_EQ(code_of([] { critical_distance(box(0, 0, 0, 4, 2), box(0, 0, 0, 4, 0)); }), Errc::invalid_geometry);
}

// Touching distance along a fixed direction is the sum of the support
// functions of both footprints; maximize it over all rotations by brute force.
TEST(CriticalDistance, MatchesRotationSearch)
{
  const auto support_max = [](double length, double width) {
    double best = 0.0;
    for (int k = 0; k <= 200000; ++k) {
      const double t = 0.5 * std::numbers::pi * k / 200000.0;
      best = std::max(best, 0.5 * length * std::cos(t) + 0.5 * width * std::sin(t));
    }
    return best;
  };
  EXPECT_NEAR(critical_distance(box(0, 0, 0, 4, 2), box(0, 0, 0, 4, 2)), 2 * support_max(4, 2), 1e-9);
  EXPECT_NEAR(
    critical_distance(box(0, 0, 0, 4, 2), box(0, 0, 0, 1, 1)), support_max(4, 2) + support_max(1, 1), 1e-9);
  EXPECT_NEAR(
    critical_distance(box(0, 0, 0, 0.5, 9), box(0, 0, 0, 7, 3)), support_max(0.5, 9) + support_max(7, 3), 1e-9);
}

TEST(CriticalDistance, NoOverlapBeyondIt)
{
  Rng rng(15);
  for (int i = 0; i < 2000; ++i) {
    OrientedBox a = test::random_box(rng);
    OrientedBox b = test::random_box(rng);
    const double d = critical_distance(a, b) * rng.uniform(1.0 + 1e-9, 1.5);
    const double dir = rng.angle();
    b.center = a.center + Vec2{std::cos(dir), std::sin(dir)} * d;
    ASSERT_FALSE(obb_overlap(a, b)) << i;
  }
}

TEST(CriticalDistance, CornerToCornerContactAttainsIt)
{
  Rng rng(16);
  for (int i = 0; i < 200; ++i) {
    OrientedBox a = test::random_box(rng);
    OrientedBox b = test::random_box(rng);
    // Direction of a's front-left corner seen from its center.
    const double alpha = std::atan2(a.width, a.length);
    const double beta = std::atan2(b.width, b.length);
    const double u = a.heading + alpha;
    // Put b's rear-right corner (angle beta + pi from its heading) on -u.
    b.heading = u - beta;
    b.center = a.center + Vec2{std::cos(u), std::sin(u)} * critical_distance(a, b);
    ASSERT_LT(std::abs(test::signed_clearance(a, b)), 1e-9) << i;
    b.center = a.center + Vec2{std::cos(u), std::sin(u)} * (critical_distance(a, b) - 1e-6);
    ASSERT_TRUE(obb_overlap(a, b)) << i;
  }
}

TEST(ExistenceRegion, Examples)
{
  EXPECT_EQ(existence_region({0, 0}, {0, 0}, 0.0, 7.5), (Circle{{0, 0}, 0.0}));
  EXPECT_EQ(existence_region({0, 0}, {0, 0}, 1.0, 7.5), (Circle{{0, 0}, 3.75}));
  EXPECT_EQ(existence_region({1, 2}, {3, -1}, 2.0, 7.5), (Circle{{7, 0}, 15.0}));
}

TEST(ExistenceRegion, Errors)
{
  EXPECT_EQ(code_of([] { existence_region({0, 0}, {0, 0}, -0.1, 7.5); }), Errc::domain);
  EXPECT_EQ(code_of([] { existence_region({0, 0}, {0, 0}, 1.0, 0.0); }), Errc::parameter);
}

TEST(ExistenceRegion, RadiusMonotoneCenterLinear)
{
  Rng rng(17);
  for (int i = 0; i < 200; ++i) {
    const Vec2 x0 = rng.point(-50, 50);
    const Vec2 v0 = rng.point(-30, 30);
    const double a = rng.uniform(0.5, 12);
    double prev = -1.0;
    for (int k = 0; k <= 50; ++k) {
      const double t = 0.07 * k;
      const Circle c = existence_region(x0, v0, t, a);
      ASSERT_GE(c.radius, prev);
      prev = c.radius;
      ASSERT_NEAR(c.center.x, x0.x + v0.x * t, 1e-12);
      ASSERT_NEAR(c.center.y, x0.y + v0.y * t, 1e-12);
    }
  }
}

TEST(CircleGap, Examples)
{
  EXPECT_EQ(circle_gap({{0, 0}, 1}, {{5, 0}, 1}), 3.0);
  EXPECT_EQ(circle_gap({{0, 0}, 2}, {{1, 0}, 2}), -3.0);
  EXPECT_EQ(circle_gap({{0, 0}, 0}, {{3, 4}, 0}), 5.0);
}

TEST(CircleGap, BoundedByCenterDistance)
{
  Rng rng(18);
  for (int i = 0; i < 2000; ++i) {
    const Circle a{rng.point(-20, 20), i % 3 == 0 ? 0.0 : rng.uniform(0, 5)};
    const Circle b{rng.point(-20, 20), i % 3 == 0 ? 0.0 : rng.uniform(0, 5)};
    const double dist = std::hypot(a.center.x - b.center.x, a.center.y - b.center.y);
    const double gap = circle_gap(a, b);
    ASSERT_LE(gap, dist);
    ASSERT_EQ(gap == dist, a.radius == 0.0 && b.radius == 0.0);
    ASSERT_EQ(gap, circle_gap(b, a));
  }
}

}  // namespace
}  // namespace r3
