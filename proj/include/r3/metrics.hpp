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

#ifndef R3__METRICS_HPP_
#define R3__METRICS_HPP_

#include "r3/frame.hpp"
#include "r3/matching.hpp"
#include "r3/risk.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace r3
{

/// tp / (tp + fn), or nullopt when there is nothing to recall.
std::optional<double> recall(std::uint64_t tp, std::uint64_t fn);
/// tp / (tp + fp), or nullopt when nothing was predicted.
std::optional<double> precision(std::uint64_t tp, std::uint64_t fp);

struct RankTally
{
  std::array<std::uint64_t, 3> tp{};  // indexed by rank_index(), IoG rule
  std::array<std::uint64_t, 3> fn{};
  std::uint64_t tp_iou = 0;
  std::uint64_t fn_iou = 0;
  std::uint64_t fp_iou = 0;

  RankTally & operator+=(const RankTally & o);
  bool operator==(const RankTally &) const = default;
};

struct SweepPoint
{
  double conf_threshold = 0.0;
  std::array<std::optional<double>, 3> r3{};  // indexed by rank_index()
  std::optional<double> recall;
  std::optional<double> precision;
  RankTally counts;

  bool operator==(const SweepPoint &) const = default;
};

/// Class names of the road-user preset (pedestrians, cycles, vehicles, road
/// signs). Matching against labels is case-insensitive.
const std::set<std::string> & default_class_preset();

/// Evenly spaced thresholds from `start` to `stop` inclusive, each rounded
/// to 1e-9 so decimal steps land on the nearest double.
std::vector<double> sweep_range(double start, double stop, double step);

struct EvalConfig
{
  RiskParams risk;
  MatchThresholds thresholds;
  std::vector<double> sweep = sweep_range(0.5, 0.95, 0.05);
  std::optional<std::set<std::string>> class_filter;

  bool operator==(const EvalConfig &) const = default;
};

void validate(const EvalConfig & config);

struct EvalTotals
{
  std::uint64_t frames = 0;
  std::uint64_t objects = 0;  // after class filtering
  std::uint64_t filtered_out = 0;
  std::array<std::uint64_t, 3> per_rank{};
  std::uint64_t predictions = 0;
  std::uint64_t dropped_predictions = 0;

  EvalTotals & operator+=(const EvalTotals & o);
  bool operator==(const EvalTotals &) const = default;
};

struct EvalReport
{
  EvalConfig config;
  EvalTotals totals;
  std::vector<SweepPoint> sweep;
  std::vector<std::string> warnings;  // sorted

  bool operator==(const EvalReport &) const = default;
};

/// Accumulates frames into per-threshold tallies. Evaluators over disjoint
/// frame sets can be merged; the result does not depend on frame order.
class Evaluator
{
public:
  explicit Evaluator(EvalConfig config);

  /// Ranks the (class-filtered) objects once, then matches at every sweep
  /// threshold. Returns the ranks assigned.
  std::vector<ObjectRank> add_frame(const Frame & frame, std::span<const Prediction> predictions);

  void add_warning(std::string warning);
  void add_dropped_predictions(std::uint64_t count);
  void merge(const Evaluator & other);

  const EvalConfig & config() const { return config_; }
  EvalReport report() const;

private:
  EvalConfig config_;
  std::optional<std::set<std::string>> filter_;  // lowercased class_filter
  EvalTotals totals_;
  std::vector<RankTally> tallies_;  // one per sweep threshold
  std::vector<std::string> warnings_;
};

struct FrameWithPredictions
{
  Frame frame;
  std::vector<Prediction> predictions;
};

EvalReport evaluate(std::span<const FrameWithPredictions> dataset, const EvalConfig & config);

}  // namespace r3

#endif  // R3__METRICS_HPP_
