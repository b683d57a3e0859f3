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

#include "r3/ingest.hpp"

#include "r3/error.hpp"

#include <cmath>
#include <string>
#include <unordered_set>
#include <utility>

#include "json.hpp"

namespace r3
{

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

void validate(const Frame & frame)
{
  if (!frame.ego) {
    throw Error(Errc::frame_format, "frame '" + frame.frame_id + "' has no ego state");
  }
  validate(*frame.ego);
  std::unordered_set<std::string> ids;
  for (const auto & o : frame.objects) {
    if (!ids.insert(o.object_id).second) {
      throw Error(
        Errc::frame_format,
        "frame '" + frame.frame_id + "' repeats object id '" + o.object_id + "'");
    }
    validate(o.world);
    validate(o.image_box);
  }
}

namespace
{

class RecordParser
{
public:
  explicit RecordParser(std::size_t line) : line_(line) {}

  [[noreturn]] void fail(const std::string & field, const std::string & why, Errc code = Errc::parse)
    const
  {
    std::string msg = "line " + std::to_string(line_) + ": ";
    if (!field.empty()) msg += "field '" + field + "': ";
    throw Error(code, msg + why);
  }

  json parse(const std::string & text) const
  {
    try {
      json j = json::parse(text);
      if (!j.is_object()) fail("", "record must be a JSON object");
      return j;
    } catch (const json::parse_error & e) {
      fail("", std::string("malformed JSON: ") + e.what());
    }
  }

  const json & member(const json & obj, const std::string & key, const std::string & path) const
  {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) fail(path, "missing");
    return *it;
  }

  bool present(const json & obj, const std::string & key) const
  {
    auto it = obj.find(key);
    return it != obj.end() && !it->is_null();
  }

  double number(const json & obj, const std::string & key, const std::string & path) const
  {
    const json & v = member(obj, key, path);
    if (!v.is_number()) fail(path, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(path, "must be finite");
    return d;
  }

  std::string text(const json & obj, const std::string & key, const std::string & path) const
  {
    const json & v = member(obj, key, path);
    if (!v.is_string()) fail(path, "expected a string");
    return v.get<std::string>();
  }

  Vec2 vec(const json & obj, const std::string & key, const std::string & path) const
  {
    const json & v = member(obj, key, path);
    if (!v.is_object()) fail(path, "expected an object with x and y");
    return {number(v, "x", path + ".x"), number(v, "y", path + ".y")};
  }

  struct ParsedState
  {
    WorldState state;
    bool velocity_known = true;
    bool heading_known = true;
  };

  ParsedState world_state(const json & obj, const std::string & key, const std::string & path) const
  {
    const json & s = member(obj, key, path);
    if (!s.is_object()) fail(path, "expected an object");
    ParsedState out;
    out.state.position = vec(s, "position", path + ".position");
    out.velocity_known = present(s, "velocity");
    if (out.velocity_known) out.state.velocity = vec(s, "velocity", path + ".velocity");
    out.heading_known = present(s, "heading");
    if (out.heading_known) out.state.heading = number(s, "heading", path + ".heading");
    out.state.length = number(s, "length", path + ".length");
    out.state.width = number(s, "width", path + ".width");
    if (!(out.state.length > 0.0)) fail(path + ".length", "must be positive");
    if (!(out.state.width > 0.0)) fail(path + ".width", "must be positive");
    return out;
  }

  ImageBox image_box(const json & obj, const std::string & key, const std::string & path) const
  {
    const json & b = member(obj, key, path);
    if (!b.is_object()) fail(path, "expected an object");
    return box_fields(b, path + ".");
  }

  ImageBox box_fields(const json & b, const std::string & prefix) const
  {
    ImageBox box{
      number(b, "x_min", prefix + "x_min"), number(b, "y_min", prefix + "y_min"),
      number(b, "x_max", prefix + "x_max"), number(b, "y_max", prefix + "y_max")};
    if (!(box.x_min < box.x_max)) fail(prefix + "x_min", "x_min must be less than x_max");
    if (!(box.y_min < box.y_max)) fail(prefix + "y_min", "y_min must be less than y_max");
    return box;
  }

private:
  std::size_t line_;
};

bool blank(const std::string & s)
{
  return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

ordered_json vec_json(Vec2 v) { return ordered_json{{"x", v.x}, {"y", v.y}}; }

ordered_json state_json(const WorldState & s, bool velocity_known, bool heading_known)
{
  ordered_json j;
  j["position"] = vec_json(s.position);
  if (velocity_known) j["velocity"] = vec_json(s.velocity);
  if (heading_known) j["heading"] = s.heading;
  j["length"] = s.length;
  j["width"] = s.width;
  return j;
}

}  // namespace

Frame parse_frame(const std::string & text, std::size_t line, std::vector<std::string> * warnings)
{
  const RecordParser p(line);
  const json j = p.parse(text);

  Frame frame;
  frame.frame_id = p.text(j, "frame_id", "frame_id");
  frame.timestamp = p.present(j, "timestamp") ? p.number(j, "timestamp", "timestamp") : 0.0;
  const std::string where = "line " + std::to_string(line) + ": frame '" + frame.frame_id + "'";

  if (!p.present(j, "ego")) p.fail("ego", "missing ego state", Errc::frame_format);
  const auto ego = p.world_state(j, "ego", "ego");
  frame.ego = ego.state;
  frame.ego_velocity_known = ego.velocity_known;
  frame.ego_heading_known = ego.heading_known;
  if (warnings && !ego.velocity_known) {
    warnings->push_back(where + " ego: velocity missing, assumed (0, 0)");
  }
  if (warnings && !ego.heading_known) {
    warnings->push_back(where + " ego: heading missing, assumed 0");
  }

  if (p.present(j, "objects")) {
    const json & objs = j.at("objects");
    if (!objs.is_array()) p.fail("objects", "expected an array");
    std::unordered_set<std::string> ids;
    for (std::size_t i = 0; i < objs.size(); ++i) {
      const std::string path = "objects[" + std::to_string(i) + "]";
      const json & o = objs[i];
      if (!o.is_object()) p.fail(path, "expected an object");
      GroundTruthObject obj;
      obj.object_id = p.text(o, "object_id", path + ".object_id");
      if (!ids.insert(obj.object_id).second) {
        p.fail(path + ".object_id", "duplicate object id '" + obj.object_id + "'", Errc::frame_format);
      }
      obj.class_label =
        p.present(o, "class_label") ? p.text(o, "class_label", path + ".class_label") : "unknown";
      const auto world = p.world_state(o, "world", path + ".world");
      obj.world = world.state;
      obj.velocity_known = world.velocity_known;
      obj.heading_known = world.heading_known;
      obj.image_box = p.image_box(o, "image_box", path + ".image_box");
      if (warnings && !obj.velocity_known) {
        warnings->push_back(
          where + " object '" + obj.object_id + "': velocity missing, assumed (0, 0)");
      }
      if (warnings && !obj.heading_known) {
        warnings->push_back(where + " object '" + obj.object_id + "': heading missing, assumed 0");
      }
      frame.objects.push_back(std::move(obj));
    }
  }
  return frame;
}

FrameReader::FrameReader(std::istream & in) : in_(&in) {}

FrameReader::FrameReader(const std::filesystem::path & path) : file_(path), in_(&file_)
{
  if (!file_) {
    throw Error(Errc::io, "cannot open frames file '" + path.string() + "'");
  }
}

std::optional<Frame> FrameReader::next()
{
  std::string text;
  while (std::getline(*in_, text)) {
    ++line_;
    if (blank(text)) continue;
    Frame frame = parse_frame(text, line_, &warnings_);
    if (!seen_ids_.insert(frame.frame_id).second) {
      throw Error(
        Errc::frame_format,
        "line " + std::to_string(line_) + ": duplicate frame id '" + frame.frame_id + "'");
    }
    return frame;
  }
  if (in_->bad()) {
    throw Error(Errc::io, "read failure after line " + std::to_string(line_));
  }
  return std::nullopt;
}

std::vector<std::string> FrameReader::take_warnings() { return std::exchange(warnings_, {}); }

std::vector<Frame> read_frames(std::istream & in, std::vector<std::string> * warnings)
{
  FrameReader reader(in);
  std::vector<Frame> frames;
  while (auto f = reader.next()) frames.push_back(std::move(*f));
  if (warnings) {
    auto w = reader.take_warnings();
    warnings->insert(warnings->end(), w.begin(), w.end());
  }
  return frames;
}

PredictionIndex load_predictions(std::istream & in)
{
  PredictionIndex index;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (blank(text)) continue;
    const RecordParser p(line);
    const json j = p.parse(text);
    const std::string frame_id = p.text(j, "frame_id", "frame_id");
    Prediction pred;
    pred.box = p.box_fields(j, "");
    pred.confidence = p.number(j, "confidence", "confidence");
    if (!(pred.confidence >= 0.0 && pred.confidence <= 1.0)) {
      p.fail("confidence", "must lie in [0, 1]");
    }
    if (p.present(j, "class_label")) pred.class_label = p.text(j, "class_label", "class_label");
    index[frame_id].push_back(std::move(pred));
  }
  if (in.bad()) throw Error(Errc::io, "read failure after line " + std::to_string(line));
  return index;
}

PredictionIndex load_predictions(const std::filesystem::path & path)
{
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot open predictions file '" + path.string() + "'");
  return load_predictions(in);
}

std::string frame_to_json(const Frame & frame)
{
  ordered_json j;
  j["frame_id"] = frame.frame_id;
  j["timestamp"] = frame.timestamp;
  if (frame.ego) {
    j["ego"] = state_json(*frame.ego, frame.ego_velocity_known, frame.ego_heading_known);
  }
  ordered_json objs = ordered_json::array();
  for (const auto & o : frame.objects) {
    ordered_json oj;
    oj["object_id"] = o.object_id;
    oj["class_label"] = o.class_label;
    oj["world"] = state_json(o.world, o.velocity_known, o.heading_known);
    oj["image_box"] = {
      {"x_min", o.image_box.x_min},
      {"y_min", o.image_box.y_min},
      {"x_max", o.image_box.x_max},
      {"y_max", o.image_box.y_max}};
    objs.push_back(std::move(oj));
  }
  j["objects"] = std::move(objs);
  return j.dump();
}

std::string prediction_to_json(const std::string & frame_id, const Prediction & p)
{
  ordered_json j;
  j["frame_id"] = frame_id;
  j["x_min"] = p.box.x_min;
  j["y_min"] = p.box.y_min;
  j["x_max"] = p.box.x_max;
  j["y_max"] = p.box.y_max;
  j["confidence"] = p.confidence;
  if (p.class_label) {
    j["class_label"] = *p.class_label;
  } else {
    j["class_label"] = nullptr;
  }
  return j.dump();
}

std::string ranks_to_json(const FrameRanks & ranks)
{
  ordered_json j;
  j["frame_id"] = ranks.frame_id;
  ordered_json arr = ordered_json::array();
  for (const auto & r : ranks.ranks) {
    arr.push_back({{"object_id", r.object_id}, {"rank", std::string(to_string(r.rank))}});
  }
  j["ranks"] = std::move(arr);
  return j.dump();
}

FrameRanks parse_ranks(const std::string & text, std::size_t line)
{
  const RecordParser p(line);
  const json j = p.parse(text);
  FrameRanks out;
  out.frame_id = p.text(j, "frame_id", "frame_id");
  const json & arr = p.member(j, "ranks", "ranks");
  if (!arr.is_array()) p.fail("ranks", "expected an array");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string path = "ranks[" + std::to_string(i) + "]";
    const std::string name = p.text(arr[i], "rank", path + ".rank");
    auto rank = parse_rank(name);
    if (!rank) p.fail(path + ".rank", "unknown rank '" + name + "'");
    out.ranks.push_back({p.text(arr[i], "object_id", path + ".object_id"), *rank});
  }
  return out;
}

std::vector<FrameRanks> read_ranks(std::istream & in)
{
  std::vector<FrameRanks> out;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (!blank(text)) out.push_back(parse_ranks(text, line));
  }
  return out;
}

}  // namespace r3
