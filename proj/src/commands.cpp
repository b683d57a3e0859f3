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

#include "r3/commands.hpp"

#include "r3/error.hpp"
#include "r3/ingest.hpp"

#include <unistd.h>

#include <algorithm>
#include <charconv>
#include <exception>
#include <fstream>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "json.hpp"

namespace r3
{

using ordered_json = nlohmann::ordered_json;

namespace
{

ordered_json optional_json(const std::optional<double> & v)
{
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json per_rank_json(const std::array<std::optional<double>, 3> & v)
{
  ordered_json j;
  for (RiskRank r : kAllRanks) j[std::string(to_string(r))] = optional_json(v[rank_index(r)]);
  return j;
}

ordered_json per_rank_json(const std::array<std::uint64_t, 3> & v)
{
  ordered_json j;
  for (RiskRank r : kAllRanks) j[std::string(to_string(r))] = v[rank_index(r)];
  return j;
}

std::string number_text(double v)
{
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string cell(const std::optional<double> & v) { return v ? number_text(*v) : std::string(); }

struct PendingFrame
{
  Frame frame;
  std::size_t line;
};

Error with_context(const Error & e, const PendingFrame & f)
{
  return Error(
    e.code(), "line " + std::to_string(f.line) + ": frame '" + f.frame.frame_id + "': " + e.what());
}

}  // namespace

std::size_t rank_stream(
  std::istream & frames, std::ostream & out, const RiskParams & params, const WarningSink & warn)
{
  validate(params);
  FrameReader reader(frames);
  std::size_t count = 0;
  while (auto frame = reader.next()) {
    if (warn) {
      for (const auto & w : reader.take_warnings()) warn(w);
    }
    FrameRanks ranks{frame->frame_id, {}};
    try {
      ranks.ranks = rank_frame(*frame, params);
    } catch (const Error & e) {
      throw with_context(e, {std::move(*frame), reader.line()});
    }
    out << ranks_to_json(ranks) << '\n';
    ++count;
  }
  if (!out) throw Error(Errc::io, "failed to write rank output");
  return count;
}

EvalReport evaluate_files(
  const std::filesystem::path & frames_path,
  const std::optional<std::filesystem::path> & predictions_path, const EvalConfig & config,
  unsigned threads)
{
  validate(config);
  threads = std::max(1u, threads);

  PredictionIndex predictions;
  if (predictions_path) predictions = load_predictions(*predictions_path);

  FrameReader reader(frames_path);
  Evaluator total(config);
  std::vector<Evaluator> workers(threads, Evaluator(config));

  const std::size_t batch_size = 64 * threads;
  std::vector<PendingFrame> batch;
  std::vector<std::vector<Prediction>> batch_preds;

  auto flush = [&]() {
    const std::size_t per = (batch.size() + threads - 1) / threads;
    std::vector<std::exception_ptr> errors(threads);
    auto work = [&](unsigned w) {
      const std::size_t begin = std::min(batch.size(), w * per);
      const std::size_t end = std::min(batch.size(), begin + per);
      for (std::size_t i = begin; i < end; ++i) {
        try {
          workers[w].add_frame(batch[i].frame, batch_preds[i]);
        } catch (const Error & e) {
          errors[w] = std::make_exception_ptr(with_context(e, batch[i]));
          return;
        }
      }
    };
    if (threads == 1) {
      work(0);
    } else {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    }
    // Chunks are contiguous, so the first failing chunk holds the earliest bad frame.
    for (const auto & e : errors) {
      if (e) std::rethrow_exception(e);
    }
    batch.clear();
    batch_preds.clear();
  };

  while (auto frame = reader.next()) {
    for (auto & w : reader.take_warnings()) total.add_warning(std::move(w));
    std::vector<Prediction> preds;
    if (auto it = predictions.find(frame->frame_id); it != predictions.end()) {
      preds = std::move(it->second);
      predictions.erase(it);
    }
    batch.push_back({std::move(*frame), reader.line()});
    batch_preds.push_back(std::move(preds));
    if (batch.size() >= batch_size) flush();
  }
  if (!batch.empty()) flush();

  for (const auto & [frame_id, preds] : predictions) {
    total.add_warning(
      "predictions for unknown frame '" + frame_id + "' dropped (" + std::to_string(preds.size()) +
      " records)");
    total.add_dropped_predictions(preds.size());
  }
  for (const auto & w : workers) total.merge(w);
  return total.report();
}

std::string report_to_json(const EvalReport & report)
{
  ordered_json j;

  ordered_json config;
  config["risk"] = {
    {"a_max", report.config.risk.a_max},
    {"l_comp", report.config.risk.l_comp},
    {"dt", report.config.risk.dt}};
  config["thresholds"] = {
    {"iog", report.config.thresholds.iog}, {"iou", report.config.thresholds.iou}};
  config["sweep"] = report.config.sweep;
  if (report.config.class_filter) {
    config["class_filter"] = *report.config.class_filter;
  } else {
    config["class_filter"] = nullptr;
  }
  j["config"] = std::move(config);

  const EvalTotals & t = report.totals;
  j["totals"] = {
    {"frames", t.frames},
    {"objects", t.objects},
    {"filtered_out", t.filtered_out},
    {"per_rank", per_rank_json(t.per_rank)},
    {"predictions", t.predictions},
    {"dropped_predictions", t.dropped_predictions}};

  ordered_json sweep = ordered_json::array();
  for (const SweepPoint & p : report.sweep) {
    ordered_json sp;
    sp["conf_threshold"] = p.conf_threshold;
    sp["r3"] = per_rank_json(p.r3);
    sp["recall"] = optional_json(p.recall);
    sp["precision"] = optional_json(p.precision);
    sp["counts"] = {
      {"tp", per_rank_json(p.counts.tp)},
      {"fn", per_rank_json(p.counts.fn)},
      {"tp_iou", p.counts.tp_iou},
      {"fn_iou", p.counts.fn_iou},
      {"fp_iou", p.counts.fp_iou}};
    sweep.push_back(std::move(sp));
  }
  j["sweep"] = std::move(sweep);
  j["warnings"] = report.warnings;
  return j.dump(2) + "\n";
}

std::string report_to_csv(const EvalReport & report)
{
  std::string out = "threshold,r3_1,r3_2,r3_3,recall,precision\n";
  for (const SweepPoint & p : report.sweep) {
    out += number_text(p.conf_threshold);
    for (const auto & r : p.r3) out += "," + cell(r);
    out += "," + cell(p.recall) + "," + cell(p.precision) + "\n";
  }
  return out;
}

std::string format_report(const EvalReport & report, ReportFormat format)
{
  return format == ReportFormat::csv ? report_to_csv(report) : report_to_json(report);
}

AtomicFile::AtomicFile(std::filesystem::path path) : path_(std::move(path))
{
  tmp_ = path_;
  tmp_ += ".tmp-" + std::to_string(::getpid());
  out_.open(tmp_, std::ios::binary | std::ios::trunc);
  if (!out_) throw Error(Errc::io, "cannot create '" + tmp_.string() + "'");
}

AtomicFile::~AtomicFile()
{
  if (!committed_) {
    out_.close();
    std::error_code ec;
    std::filesystem::remove(tmp_, ec);
  }
}

void AtomicFile::commit()
{
  out_.flush();
  if (!out_) throw Error(Errc::io, "failed writing '" + tmp_.string() + "'");
  out_.close();
  std::error_code ec;
  std::filesystem::rename(tmp_, path_, ec);
  if (ec) throw Error(Errc::io, "cannot move output into '" + path_.string() + "'");
  committed_ = true;
}

void write_file_atomic(const std::filesystem::path & path, const std::string & content)
{
  AtomicFile file(path);
  file.stream().write(content.data(), static_cast<std::streamsize>(content.size()));
  file.commit();
}

GeneratedFiles render_scenarios(const std::vector<ScenarioSpec> & specs, bool with_predictions)
{
  GeneratedFiles files;
  std::unordered_set<std::string> ids;
  for (const ScenarioSpec & spec : specs) {
    const GeneratedScenario g = generate(spec);
    for (const Frame & f : g.frames) {
      if (!ids.insert(f.frame_id).second) {
        throw Error(Errc::spec, "scenarios produce duplicate frame id '" + f.frame_id + "'");
      }
    }
    for (const Frame & f : g.frames) files.frames += frame_to_json(f) + "\n";
    for (const FrameRanks & r : g.expected) files.expected += ranks_to_json(r) + "\n";
    if (with_predictions) {
      for (const auto & [frame_id, pred] : synthesize_predictions(g.frames, spec.seed)) {
        files.predictions += prediction_to_json(frame_id, pred) + "\n";
      }
    }
  }
  return files;
}

}  // namespace r3
