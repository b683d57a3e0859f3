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

#ifndef R3__INGEST_HPP_
#define R3__INGEST_HPP_

#include "r3/frame.hpp"
#include "r3/matching.hpp"
#include "r3/risk.hpp"

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

namespace r3
{

/// Streams frames from line-delimited JSON, one frame per line. Blank lines
/// are skipped. Only the current frame is held in memory (plus the set of
/// frame ids seen so far, for duplicate detection).
///
/// Missing or null `velocity` / `heading` fields are replaced by zero and
/// reported through warnings().
class FrameReader
{
public:
  explicit FrameReader(std::istream & in);
  explicit FrameReader(const std::filesystem::path & path);

  /// Next frame, or nullopt at end of input. Throws Error(Errc::parse) with
  /// the line number on malformed records.
  std::optional<Frame> next();

  std::size_t line() const { return line_; }
  /// Warnings produced since the last call.
  std::vector<std::string> take_warnings();

private:
  std::ifstream file_;
  std::istream * in_;
  std::size_t line_ = 0;
  std::unordered_set<std::string> seen_ids_;
  std::vector<std::string> warnings_;
};

/// Reads every frame of a stream. Convenience for small inputs and tests.
std::vector<Frame> read_frames(std::istream & in, std::vector<std::string> * warnings = nullptr);

/// Parses a single frame record. `line` is used in error messages only.
Frame parse_frame(const std::string & text, std::size_t line, std::vector<std::string> * warnings);

using PredictionIndex = std::map<std::string, std::vector<Prediction>>;

/// Groups prediction records by frame id, preserving file order within a
/// frame. Throws Error(Errc::parse) with the line number on bad records.
PredictionIndex load_predictions(std::istream & in);
PredictionIndex load_predictions(const std::filesystem::path & path);

/// Single-line JSON encodings, inverse of the parsers above.
std::string frame_to_json(const Frame & frame);
std::string prediction_to_json(const std::string & frame_id, const Prediction & prediction);

/// Per-frame rank record, shared by `rank` output and `.expected.jsonl`
/// sidecars.
struct FrameRanks
{
  std::string frame_id;
  std::vector<ObjectRank> ranks;

  bool operator==(const FrameRanks &) const = default;
};

std::string ranks_to_json(const FrameRanks & ranks);
FrameRanks parse_ranks(const std::string & text, std::size_t line);
std::vector<FrameRanks> read_ranks(std::istream & in);

}  // namespace r3

#endif  // R3__INGEST_HPP_
