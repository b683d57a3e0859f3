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

#ifndef R3__FRAME_HPP_
#define R3__FRAME_HPP_

#include "r3/matching.hpp"
#include "r3/risk.hpp"

#include <optional>
#include <string>
#include <vector>

namespace r3
{

struct GroundTruthObject
{
  std::string object_id;
  std::string class_label;
  WorldState world;
  ImageBox image_box;
  bool velocity_known = true;
  bool heading_known = true;

  bool operator==(const GroundTruthObject &) const = default;
};

/// One dataset sample. Ego and objects share one global ground-plane frame.
struct Frame
{
  std::string frame_id;
  double timestamp = 0.0;
  std::optional<WorldState> ego;
  bool ego_velocity_known = true;
  bool ego_heading_known = true;
  std::vector<GroundTruthObject> objects;

  bool operator==(const Frame &) const = default;
};

/// Throws Error(Errc::frame_format) when the ego is missing or object ids
/// repeat, Error(Errc::invalid_geometry) / Error(Errc::degenerate_box) for
/// invalid states or boxes.
void validate(const Frame & frame);

}  // namespace r3

#endif  // R3__FRAME_HPP_
