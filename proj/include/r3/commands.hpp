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

#ifndef R3__COMMANDS_HPP_
#define R3__COMMANDS_HPP_

#include "r3/metrics.hpp"
#include "r3/scenario.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace r3
{

using WarningSink = std::function<void(const std::string &)>;

enum class ReportFormat
{
  json,
  csv,
};

/// Ranks every frame of `frames` and writes one FrameRanks record per line.
/// Returns the number of frames processed.
std::size_t rank_stream(
  std::istream & frames, std::ostream & out, const RiskParams & params,
  const WarningSink & warn = {});

/// Streams frames, joins them with the predictions and evaluates, spreading
/// each batch of frames over `threads` workers. Prediction records for frame
/// ids that never appear are dropped with a warning. Errors raised for a
/// frame carry its file line number.
EvalReport evaluate_files(
  const std::filesystem::path & frames_path,
  const std::optional<std::filesystem::path> & predictions_path, const EvalConfig & config,
  unsigned threads = 1);

std::string report_to_json(const EvalReport & report);
/// One row per sweep point: threshold, r3_1, r3_2, r3_3, recall, precision.
/// Undefined ratios are empty cells.
std::string report_to_csv(const EvalReport & report);
std::string format_report(const EvalReport & report, ReportFormat format);

/// Output file that only appears under its final name once commit()
/// succeeds. Uncommitted temporaries are removed on destruction.
class AtomicFile
{
public:
  explicit AtomicFile(std::filesystem::path path);
  ~AtomicFile();
  AtomicFile(const AtomicFile &) = delete;
  AtomicFile & operator=(const AtomicFile &) = delete;

  std::ostream & stream() { return out_; }
  void commit();

private:
  std::filesystem::path path_;
  std::filesystem::path tmp_;
  std::ofstream out_;
  bool committed_ = false;
};

/// Writes through a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path & path, const std::string & content);

struct GeneratedFiles
{
  std::string frames;
  std::string expected;
  std::string predictions;
};

/// Renders generated scenarios in the interchange formats. Frames of all
/// specs are concatenated in spec order; frame ids must not collide.
GeneratedFiles render_scenarios(const std::vector<ScenarioSpec> & specs, bool with_predictions);

}  // namespace r3

#endif  // R3__COMMANDS_HPP_
