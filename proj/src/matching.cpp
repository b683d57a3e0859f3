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

#include "r3/matching.hpp"

#include "r3/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <tuple>
#include <unordered_set>

namespace r3
{

void validate(const ImageBox & b)
{
  if (!std::isfinite(b.x_min) || !std::isfinite(b.y_min) || !std::isfinite(b.x_max) ||
      !std::isfinite(b.y_max)) {
    throw Error(Errc::degenerate_box, "image box coordinates must be finite");
  }
  if (!(b.x_min < b.x_max)) {
    throw Error(Errc::degenerate_box, "image box requires x_min < x_max");
  }
  if (!(b.y_min < b.y_max)) {
    throw Error(Errc::degenerate_box, "image box requires y_min < y_max");
  }
}

namespace
{

double intersection_area(const ImageBox & a, const ImageBox & b)
{
  const double w = std::min(a.x_max, b.x_max) - std::max(a.x_min, b.x_min);
  const double h = std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min);
  if (w <= 0.0 || h <= 0.0) return 0.0;
  return w * h;
}

}  // namespace

double iog(const ImageBox & gt, const ImageBox & pred)
{
  validate(gt);
  validate(pred);
  return std::min(1.0, intersection_area(gt, pred) / gt.area());
}

double iou(const ImageBox & a, const ImageBox & b)
{
  validate(a);
  validate(b);
  const double inter = intersection_area(a, b);
  return std::min(1.0, inter / (a.area() + b.area() - inter));
}

std::size_t MatchResult::tp_iog() const
{
  return static_cast<std::size_t>(
    std::count_if(gts.begin(), gts.end(), [](const auto & g) { return g.is_tp_iog; }));
}

std::size_t MatchResult::tp_iou() const
{
  return static_cast<std::size_t>(
    std::count_if(gts.begin(), gts.end(), [](const auto & g) { return g.is_tp_iou; }));
}

MatchResult match_frame(
  std::span<const GroundTruthBox> gts, std::span<const Prediction> preds, double conf_threshold,
  const MatchThresholds & thresholds)
{
  if (!(thresholds.iog > 0.0 && thresholds.iog <= 1.0)) {
    throw Error(Errc::parameter, "IoG threshold must lie in (0, 1]");
  }
  if (!(thresholds.iou > 0.0 && thresholds.iou <= 1.0)) {
    throw Error(Errc::parameter, "IoU threshold must lie in (0, 1]");
  }
  if (!(conf_threshold >= 0.0 && conf_threshold <= 1.0)) {
    throw Error(Errc::parameter, "confidence threshold must lie in [0, 1]");
  }

  std::unordered_set<std::string> ids;
  for (const auto & gt : gts) {
    validate(gt.box);
    if (!ids.insert(gt.id).second) {
      throw Error(Errc::frame_format, "duplicate ground truth id '" + gt.id + "'");
    }
  }

  // Canonical order makes the greedy tie-break independent of input order.
  std::vector<const Prediction *> kept;
  for (const auto & p : preds) {
    validate(p.box);
    if (!(p.confidence >= 0.0 && p.confidence <= 1.0)) {
      throw Error(Errc::parameter, "prediction confidence must lie in [0, 1]");
    }
    if (p.confidence >= conf_threshold) kept.push_back(&p);
  }
  std::sort(kept.begin(), kept.end(), [](const Prediction * a, const Prediction * b) {
    return std::make_tuple(-a->confidence, a->box.x_min, a->box.y_min, a->box.x_max, a->box.y_max) <
           std::make_tuple(-b->confidence, b->box.x_min, b->box.y_min, b->box.x_max, b->box.y_max);
  });

  MatchResult result;
  result.predictions = kept.size();
  result.gts.reserve(gts.size());

  struct Pair
  {
    double iou;
    std::size_t pred;
    std::size_t gt;
  };
  std::vector<Pair> pairs;

  for (std::size_t g = 0; g < gts.size(); ++g) {
    GroundTruthMatch m{gts[g].id};
    for (std::size_t p = 0; p < kept.size(); ++p) {
      m.best_iog = std::max(m.best_iog, iog(gts[g].box, kept[p]->box));
      const double overlap = iou(gts[g].box, kept[p]->box);
      m.best_iou = std::max(m.best_iou, overlap);
      if (overlap >= thresholds.iou) pairs.push_back({overlap, p, g});
    }
    m.is_tp_iog = m.best_iog >= thresholds.iog;
    result.gts.push_back(std::move(m));
  }

  std::sort(pairs.begin(), pairs.end(), [](const Pair & a, const Pair & b) {
    if (a.iou != b.iou) return a.iou > b.iou;
    if (a.pred != b.pred) return a.pred < b.pred;
    return a.gt < b.gt;
  });

  std::vector<bool> pred_used(kept.size(), false);
  std::size_t matched = 0;
  for (const Pair & pr : pairs) {
    if (pred_used[pr.pred] || result.gts[pr.gt].is_tp_iou) continue;
    pred_used[pr.pred] = true;
    result.gts[pr.gt].is_tp_iou = true;
    ++matched;
  }
  result.unmatched_predictions = kept.size() - matched;
  return result;
}

}  // namespace r3
