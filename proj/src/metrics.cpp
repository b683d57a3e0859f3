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

#include "r3/metrics.hpp"

#include "r3/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <utility>

namespace r3
{

std::optional<double> recall(std::uint64_t tp, std::uint64_t fn)
{
  if (tp + fn == 0) return std::nullopt;
  return static_cast<double>(tp) / static_cast<double>(tp + fn);
}

std::optional<double> precision(std::uint64_t tp, std::uint64_t fp)
{
  if (tp + fp == 0) return std::nullopt;
  return static_cast<double>(tp) / static_cast<double>(tp + fp);
}

RankTally & RankTally::operator+=(const RankTally & o)
{
  for (std::size_t i = 0; i < 3; ++i) {
    tp[i] += o.tp[i];
    fn[i] += o.fn[i];
  }
  tp_iou += o.tp_iou;
  fn_iou += o.fn_iou;
  fp_iou += o.fp_iou;
  return *this;
}

EvalTotals & EvalTotals::operator+=(const EvalTotals & o)
{
  frames += o.frames;
  objects += o.objects;
  filtered_out += o.filtered_out;
  for (std::size_t i = 0; i < 3; ++i) per_rank[i] += o.per_rank[i];
  predictions += o.predictions;
  dropped_predictions += o.dropped_predictions;
  return *this;
}

const std::set<std::string> & default_class_preset()
{
  static const std::set<std::string> preset{"Pedestrian", "Cycle", "Vehicle", "Road Sign"};
  return preset;
}

std::vector<double> sweep_range(double start, double stop, double step)
{
  if (!std::isfinite(start) || !std::isfinite(stop) || !(step > 0.0) || !std::isfinite(step)) {
    throw Error(Errc::parameter, "sweep range needs finite bounds and a positive step");
  }
  if (stop < start) {
    throw Error(Errc::parameter, "sweep range stop is below start");
  }
  const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> values;
  values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = start + static_cast<double>(i) * step;
    values.push_back(std::round(v * 1e9) / 1e9);
  }
  return values;
}

void validate(const EvalConfig & config)
{
  validate(config.risk);
  if (!(config.thresholds.iog > 0.0 && config.thresholds.iog <= 1.0)) {
    throw Error(Errc::parameter, "IoG threshold must lie in (0, 1]");
  }
  if (!(config.thresholds.iou > 0.0 && config.thresholds.iou <= 1.0)) {
    throw Error(Errc::parameter, "IoU threshold must lie in (0, 1]");
  }
  if (config.sweep.empty()) {
    throw Error(Errc::parameter, "sweep list must not be empty");
  }
  for (std::size_t i = 0; i < config.sweep.size(); ++i) {
    const double c = config.sweep[i];
    if (!(c > 0.0 && c <= 1.0)) {
      throw Error(Errc::parameter, "sweep thresholds must lie in (0, 1]");
    }
    if (i > 0 && !(c > config.sweep[i - 1])) {
      throw Error(Errc::parameter, "sweep thresholds must be strictly increasing");
    }
  }
}

namespace
{

std::string lowercase(std::string s)
{
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

Evaluator::Evaluator(EvalConfig config) : config_(std::move(config))
{
  validate(config_);
  if (config_.class_filter) {
    std::set<std::string> lowered;
    for (const auto & c : *config_.class_filter) lowered.insert(lowercase(c));
    filter_ = std::move(lowered);
  }
  tallies_.resize(config_.sweep.size());
}

std::vector<ObjectRank> Evaluator::add_frame(
  const Frame & frame, std::span<const Prediction> predictions)
{
  validate(frame);

  Frame kept = frame;
  if (filter_) {
    std::erase_if(kept.objects, [this](const GroundTruthObject & o) {
      return filter_->count(lowercase(o.class_label)) == 0;
    });
  }

  const std::vector<ObjectRank> ranks = rank_frame(kept, config_.risk);

  std::vector<GroundTruthBox> gts;
  gts.reserve(kept.objects.size());
  for (const auto & o : kept.objects) gts.push_back({o.object_id, o.image_box});

  EvalTotals t;
  t.frames = 1;
  t.objects = kept.objects.size();
  t.filtered_out = frame.objects.size() - kept.objects.size();
  for (const auto & r : ranks) ++t.per_rank[rank_index(r.rank)];
  t.predictions = predictions.size();

  // Matching can reject a prediction; finish all of it before committing.
  std::vector<RankTally> frame_tallies(config_.sweep.size());
  for (std::size_t i = 0; i < config_.sweep.size(); ++i) {
    const MatchResult m = match_frame(gts, predictions, config_.sweep[i], config_.thresholds);
    RankTally & tally = frame_tallies[i];
    for (std::size_t g = 0; g < m.gts.size(); ++g) {
      const int r = rank_index(ranks[g].rank);
      if (m.gts[g].is_tp_iog) {
        ++tally.tp[r];
      } else {
        ++tally.fn[r];
      }
      if (m.gts[g].is_tp_iou) {
        ++tally.tp_iou;
      } else {
        ++tally.fn_iou;
      }
    }
    tally.fp_iou += m.unmatched_predictions;
  }

  totals_ += t;
  for (std::size_t i = 0; i < tallies_.size(); ++i) tallies_[i] += frame_tallies[i];
  return ranks;
}

void Evaluator::add_warning(std::string warning) { warnings_.push_back(std::move(warning)); }

void Evaluator::add_dropped_predictions(std::uint64_t count) { totals_.dropped_predictions += count; }

void Evaluator::merge(const Evaluator & other)
{
  if (!(other.config_ == config_)) {
    throw Error(Errc::parameter, "cannot merge evaluators with different configurations");
  }
  totals_ += other.totals_;
  for (std::size_t i = 0; i < tallies_.size(); ++i) tallies_[i] += other.tallies_[i];
  warnings_.insert(warnings_.end(), other.warnings_.begin(), other.warnings_.end());
}

EvalReport Evaluator::report() const
{
  EvalReport report;
  report.config = config_;
  report.totals = totals_;
  report.sweep.reserve(tallies_.size());
  for (std::size_t i = 0; i < tallies_.size(); ++i) {
    const RankTally & c = tallies_[i];
    SweepPoint p;
    p.conf_threshold = config_.sweep[i];
    for (std::size_t r = 0; r < 3; ++r) p.r3[r] = recall(c.tp[r], c.fn[r]);
    p.recall = recall(c.tp_iou, c.fn_iou);
    p.precision = precision(c.tp_iou, c.fp_iou);
    p.counts = c;
    report.sweep.push_back(p);
  }
  report.warnings = warnings_;
  std::sort(report.warnings.begin(), report.warnings.end());
  return report;
}

EvalReport evaluate(std::span<const FrameWithPredictions> dataset, const EvalConfig & config)
{
  Evaluator evaluator(config);
  for (const auto & item : dataset) {
    evaluator.add_frame(item.frame, item.predictions);
  }
  return evaluator.report();
}

}  // namespace r3
