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

#include "r3/r3.h"

#include "r3/commands.hpp"
#include "r3/error.hpp"
#include "r3/geometry.hpp"
#include "r3/ingest.hpp"
#include "r3/matching.hpp"
#include "r3/metrics.hpp"
#include "r3/risk.hpp"
#include "r3/scenario.hpp"

#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>

struct r3_config
{
  r3::EvalConfig eval;
  unsigned threads = 1;
};

struct r3_report
{
  r3::EvalReport report;
  std::string rendered;
};

struct r3_scenario
{
  std::vector<r3::ScenarioSpec> specs;
};

namespace
{

thread_local std::string g_last_error;

std::mutex g_warning_mutex;
r3_warning_fn g_warning_fn = nullptr;
void * g_warning_user = nullptr;

r3_status status_for(r3::Errc code)
{
  switch (code) {
    case r3::Errc::parse:
    case r3::Errc::frame_format:
    case r3::Errc::degenerate_box:
      return R3_ERROR_PARSE;
    case r3::Errc::parameter:
    case r3::Errc::domain:
    case r3::Errc::spec:
      return R3_ERROR_CONFIG;
    case r3::Errc::io:
      return R3_ERROR_IO;
    case r3::Errc::invalid_geometry:
      return R3_ERROR_GEOMETRY;
  }
  return R3_ERROR_INTERNAL;
}

r3_status fail(r3_status status, std::string message)
{
  g_last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename Body>
r3_status guarded(Body && body)
{
  try {
    body();
    return R3_OK;
  } catch (const r3::Error & e) {
    return fail(status_for(e.code()), e.what());
  } catch (const std::bad_alloc &) {
    return fail(R3_ERROR_INTERNAL, "out of memory");
  } catch (const std::exception & e) {
    return fail(R3_ERROR_INTERNAL, e.what());
  } catch (...) {
    return fail(R3_ERROR_INTERNAL, "unknown exception");
  }
}

#define R3_REQUIRE(ptr)                                                          \
  do {                                                                           \
    if ((ptr) == nullptr) return fail(R3_ERROR_NULL_ARGUMENT, #ptr " is NULL"); \
  } while (0)

void emit_warning(const std::string & message)
{
  std::lock_guard lock(g_warning_mutex);
  if (g_warning_fn) g_warning_fn(message.c_str(), g_warning_user);
}

r3::RiskParams to_cpp(const r3_risk_params & p) { return {p.a_max, p.l_comp, p.dt}; }

r3::OrientedBox to_cpp(const r3_box & b)
{
  return {{b.center_x, b.center_y}, b.heading, b.length, b.width};
}

r3::WorldState to_cpp(const r3_state & s)
{
  return {{s.x, s.y}, {s.vx, s.vy}, s.heading, s.length, s.width};
}

r3::ImageBox to_cpp(const r3_image_box & b) { return {b.x_min, b.y_min, b.x_max, b.y_max}; }

void write_output(const char * out_path, const std::string & content)
{
  if (std::string_view(out_path) == "-") {
    std::cout << content << std::flush;
    if (!std::cout) throw r3::Error(r3::Errc::io, "failed writing to stdout");
  } else {
    r3::write_file_atomic(out_path, content);
  }
}

template <typename Edit>
r3_status edit_specs(r3_scenario * scenario, Edit && edit)
{
  R3_REQUIRE(scenario);
  return guarded([&] {
    auto next = scenario->specs;
    for (auto & spec : next) {
      edit(spec);
      r3::validate(spec);
    }
    scenario->specs = std::move(next);
  });
}

}  // namespace

extern "C" {

const char * r3_version(void) { return "1.0.0"; }

const char * r3_last_error(void) { return g_last_error.c_str(); }

const char * r3_status_name(r3_status status)
{
  switch (status) {
    case R3_OK:
      return "ok";
    case R3_ERROR_INTERNAL:
      return "internal error";
    case R3_ERROR_PARSE:
      return "parse error";
    case R3_ERROR_CONFIG:
      return "configuration error";
    case R3_ERROR_IO:
      return "i/o error";
    case R3_ERROR_GEOMETRY:
      return "invalid geometry";
    case R3_ERROR_NULL_ARGUMENT:
      return "null argument";
  }
  return "unknown status";
}

const char * r3_rank_name(r3_rank rank)
{
  switch (rank) {
    case R3_RANK_IMMINENT:
      return "imminent";
    case R3_RANK_POTENTIAL:
      return "potential";
    case R3_RANK_OTHER:
      return "other";
  }
  return "unknown";
}

void r3_set_warning_handler(r3_warning_fn fn, void * user_data)
{
  std::lock_guard lock(g_warning_mutex);
  g_warning_fn = fn;
  g_warning_user = user_data;
}

r3_status r3_config_new(r3_config ** out)
{
  R3_REQUIRE(out);
  return guarded([&] { *out = new r3_config(); });
}

void r3_config_free(r3_config * config) { delete config; }

r3_status r3_config_set_risk(r3_config * config, r3_risk_params params)
{
  R3_REQUIRE(config);
  return guarded([&] {
    const r3::RiskParams p = to_cpp(params);
    r3::validate(p);
    config->eval.risk = p;
  });
}

r3_status r3_config_get_risk(const r3_config * config, r3_risk_params * out)
{
  R3_REQUIRE(config);
  R3_REQUIRE(out);
  *out = {config->eval.risk.a_max, config->eval.risk.l_comp, config->eval.risk.dt};
  return R3_OK;
}

r3_status r3_config_set_thresholds(r3_config * config, double iog, double iou)
{
  R3_REQUIRE(config);
  return guarded([&] {
    r3::EvalConfig next = config->eval;
    next.thresholds = {iog, iou};
    r3::validate(next);
    config->eval = std::move(next);
  });
}

r3_status r3_config_set_sweep_range(r3_config * config, double start, double stop, double step)
{
  R3_REQUIRE(config);
  return guarded([&] {
    r3::EvalConfig next = config->eval;
    next.sweep = r3::sweep_range(start, stop, step);
    r3::validate(next);
    config->eval = std::move(next);
  });
}

r3_status r3_config_set_sweep(r3_config * config, const double * values, size_t count)
{
  R3_REQUIRE(config);
  if (count > 0) R3_REQUIRE(values);
  return guarded([&] {
    r3::EvalConfig next = config->eval;
    next.sweep.assign(values, values + count);
    r3::validate(next);
    config->eval = std::move(next);
  });
}

r3_status r3_config_set_class_preset(r3_config * config, int enabled)
{
  R3_REQUIRE(config);
  if (enabled) {
    config->eval.class_filter = r3::default_class_preset();
  } else {
    config->eval.class_filter.reset();
  }
  return R3_OK;
}

r3_status r3_config_set_threads(r3_config * config, unsigned threads)
{
  R3_REQUIRE(config);
  if (threads == 0) return fail(R3_ERROR_CONFIG, "thread count must be at least 1");
  config->threads = threads;
  return R3_OK;
}

r3_status r3_time_to_stop(double vx, double vy, const r3_risk_params * params, double * out)
{
  R3_REQUIRE(params);
  R3_REQUIRE(out);
  return guarded([&] { *out = r3::time_to_stop({vx, vy}, to_cpp(*params)); });
}

r3_status r3_obb_overlap(const r3_box * a, const r3_box * b, int * out)
{
  R3_REQUIRE(a);
  R3_REQUIRE(b);
  R3_REQUIRE(out);
  return guarded([&] { *out = r3::obb_overlap(to_cpp(*a), to_cpp(*b)) ? 1 : 0; });
}

r3_status r3_critical_distance(const r3_box * a, const r3_box * b, double * out)
{
  R3_REQUIRE(a);
  R3_REQUIRE(b);
  R3_REQUIRE(out);
  return guarded([&] { *out = r3::critical_distance(to_cpp(*a), to_cpp(*b)); });
}

r3_status r3_rank_object(
  const r3_state * ego, const r3_state * obj, const r3_risk_params * params, r3_rank * out)
{
  R3_REQUIRE(ego);
  R3_REQUIRE(obj);
  R3_REQUIRE(params);
  R3_REQUIRE(out);
  return guarded([&] {
    const r3::RiskParams p = to_cpp(*params);
    r3::validate(p);
    *out = static_cast<r3_rank>(r3::rank_object(to_cpp(*ego), to_cpp(*obj), p));
  });
}

r3_status r3_iog(const r3_image_box * gt, const r3_image_box * pred, double * out)
{
  R3_REQUIRE(gt);
  R3_REQUIRE(pred);
  R3_REQUIRE(out);
  return guarded([&] { *out = r3::iog(to_cpp(*gt), to_cpp(*pred)); });
}

r3_status r3_iou(const r3_image_box * a, const r3_image_box * b, double * out)
{
  R3_REQUIRE(a);
  R3_REQUIRE(b);
  R3_REQUIRE(out);
  return guarded([&] { *out = r3::iou(to_cpp(*a), to_cpp(*b)); });
}

r3_status r3_rank_file(const r3_config * config, const char * frames_path, const char * out_path)
{
  R3_REQUIRE(config);
  R3_REQUIRE(frames_path);
  R3_REQUIRE(out_path);
  return guarded([&] {
    std::ifstream in(frames_path);
    if (!in) throw r3::Error(r3::Errc::io, std::string("cannot open frames file '") + frames_path + "'");
    if (std::string_view(out_path) == "-") {
      r3::rank_stream(in, std::cout, config->eval.risk, emit_warning);
      std::cout.flush();
    } else {
      r3::AtomicFile file(out_path);
      r3::rank_stream(in, file.stream(), config->eval.risk, emit_warning);
      file.commit();
    }
  });
}

r3_status r3_evaluate_files(
  const r3_config * config, const char * frames_path, const char * predictions_path, r3_report ** out)
{
  R3_REQUIRE(config);
  R3_REQUIRE(frames_path);
  R3_REQUIRE(out);
  return guarded([&] {
    std::optional<std::filesystem::path> preds;
    if (predictions_path) preds = predictions_path;
    auto report = std::make_unique<r3_report>();
    report->report = r3::evaluate_files(frames_path, preds, config->eval, config->threads);
    for (const auto & w : report->report.warnings) emit_warning(w);
    *out = report.release();
  });
}

void r3_report_free(r3_report * report) { delete report; }

size_t r3_report_sweep_size(const r3_report * report)
{
  return report ? report->report.sweep.size() : 0;
}

r3_status r3_report_sweep_point(const r3_report * report, size_t index, r3_sweep_point * out)
{
  R3_REQUIRE(report);
  R3_REQUIRE(out);
  if (index >= report->report.sweep.size()) {
    return fail(R3_ERROR_CONFIG, "sweep index out of range");
  }
  const r3::SweepPoint & p = report->report.sweep[index];
  *out = {};
  out->conf_threshold = p.conf_threshold;
  for (int r = 0; r < 3; ++r) {
    out->r3_defined[r] = p.r3[r].has_value();
    out->r3[r] = p.r3[r].value_or(0.0);
  }
  out->recall_defined = p.recall.has_value();
  out->recall = p.recall.value_or(0.0);
  out->precision_defined = p.precision.has_value();
  out->precision = p.precision.value_or(0.0);
  return R3_OK;
}

uint64_t r3_report_total_objects(const r3_report * report)
{
  return report ? report->report.totals.objects : 0;
}

uint64_t r3_report_rank_count(const r3_report * report, r3_rank rank)
{
  if (!report || rank < R3_RANK_IMMINENT || rank > R3_RANK_OTHER) return 0;
  return report->report.totals.per_rank[static_cast<int>(rank) - 1];
}

size_t r3_report_warning_count(const r3_report * report)
{
  return report ? report->report.warnings.size() : 0;
}

r3_status r3_report_render(r3_report * report, r3_format format, const char ** out)
{
  R3_REQUIRE(report);
  R3_REQUIRE(out);
  return guarded([&] {
    report->rendered = r3::format_report(
      report->report, format == R3_FORMAT_CSV ? r3::ReportFormat::csv : r3::ReportFormat::json);
    *out = report->rendered.c_str();
  });
}

r3_status r3_report_write(const r3_report * report, r3_format format, const char * out_path)
{
  R3_REQUIRE(report);
  R3_REQUIRE(out_path);
  return guarded([&] {
    write_output(
      out_path, r3::format_report(
                  report->report,
                  format == R3_FORMAT_CSV ? r3::ReportFormat::csv : r3::ReportFormat::json));
  });
}

r3_status r3_scenario_new(const char * kind, r3_scenario ** out)
{
  R3_REQUIRE(kind);
  R3_REQUIRE(out);
  auto parsed = r3::parse_scenario_kind(kind);
  if (!parsed) return fail(R3_ERROR_CONFIG, std::string("unknown scenario kind '") + kind + "'");
  return guarded([&] {
    auto s = std::make_unique<r3_scenario>();
    r3::ScenarioSpec spec;
    spec.kind = *parsed;
    s->specs.push_back(spec);
    *out = s.release();
  });
}

r3_status r3_scenario_load(const char * spec_path, r3_scenario ** out)
{
  R3_REQUIRE(spec_path);
  R3_REQUIRE(out);
  return guarded([&] {
    std::ifstream in(spec_path);
    if (!in) throw r3::Error(r3::Errc::io, std::string("cannot open spec file '") + spec_path + "'");
    std::stringstream text;
    text << in.rdbuf();
    auto s = std::make_unique<r3_scenario>();
    s->specs = r3::parse_scenario_specs(text.str());
    *out = s.release();
  });
}

void r3_scenario_free(r3_scenario * scenario) { delete scenario; }


r3_status r3_scenario_set_param(r3_scenario * scenario, const char * name, double value)
{
  R3_REQUIRE(name);
  return edit_specs(scenario, [&](r3::ScenarioSpec & s) { s.params[name] = value; });
}

r3_status r3_scenario_set_seed(r3_scenario * scenario, uint64_t seed)
{
  return edit_specs(scenario, [&](r3::ScenarioSpec & s) { s.seed = seed; });
}

r3_status r3_scenario_set_frames(r3_scenario * scenario, int frames)
{
  return edit_specs(scenario, [&](r3::ScenarioSpec & s) { s.frames = frames; });
}

r3_status r3_scenario_set_risk(r3_scenario * scenario, r3_risk_params params)
{
  return edit_specs(scenario, [&](r3::ScenarioSpec & s) { s.risk = to_cpp(params); });
}

r3_status r3_scenario_generate(
  const r3_scenario * scenario, const char * frames_path, const char * expected_path,
  const char * predictions_path)
{
  R3_REQUIRE(scenario);
  R3_REQUIRE(frames_path);
  R3_REQUIRE(expected_path);
  return guarded([&] {
    const r3::GeneratedFiles files = r3::render_scenarios(scenario->specs, predictions_path != nullptr);
    r3::write_file_atomic(frames_path, files.frames);
    r3::write_file_atomic(expected_path, files.expected);
    if (predictions_path) r3::write_file_atomic(predictions_path, files.predictions);
  });
}

}  // extern "C"
