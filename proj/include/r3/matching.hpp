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

#ifndef R3__MATCHING_HPP_
#define R3__MATCHING_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace r3
{

/// Axis-aligned image-plane rectangle in (real-valued) pixels.
struct ImageBox
{
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 0.0;
  double y_max = 0.0;

  bool operator==(const ImageBox &) const = default;

  double area() const { return (x_max - x_min) * (y_max - y_min); }
};

/// Throws Error(Errc::degenerate_box) for non-finite or empty boxes.
void validate(const ImageBox & box);

struct Prediction
{
  ImageBox box;
  double confidence = 0.0;
  std::optional<std::string> class_label;

  bool operator==(const Prediction &) const = default;
};

struct GroundTruthBox
{
  std::string id;
  ImageBox box;
};

/// Intersection over ground truth: fraction of `gt` covered by `pred`.
double iog(const ImageBox & gt, const ImageBox & pred);

/// Intersection over union.
double iou(const ImageBox & a, const ImageBox & b);

struct MatchThresholds
{
  double iog = 0.8;
  double iou = 0.8;

  bool operator==(const MatchThresholds &) const = default;
};

struct GroundTruthMatch
{
  std::string id;
  bool is_tp_iog = false;
  double best_iog = 0.0;
  bool is_tp_iou = false;
  double best_iou = 0.0;
};

struct MatchResult
{
  std::vector<GroundTruthMatch> gts;  // same order as the input ground truth
  std::size_t predictions = 0;        // predictions that passed the confidence filter
  std::size_t unmatched_predictions = 0;  // under the one-to-one IoU rule

  std::size_t tp_iog() const;
  std::size_t tp_iou() const;
};

/// Matches one frame. Predictions below `conf_threshold` are discarded
/// first; class labels are ignored.
///
/// A ground truth is an IoG true positive when any single remaining
/// prediction covers at least `thresholds.iog` of it, so one prediction may
/// satisfy several ground truths. IoU true positives come from greedy
/// one-to-one assignment over (gt, pred) pairs sorted by IoU descending.
/// Ties go to the prediction that sorts first by (confidence desc, x_min,
/// y_min, x_max, y_max), then to the earlier ground truth.
MatchResult match_frame(
  std::span<const GroundTruthBox> gts, std::span<const Prediction> preds, double conf_threshold,
  const MatchThresholds & thresholds);

}  // namespace r3

#endif  // R3__MATCHING_HPP_
