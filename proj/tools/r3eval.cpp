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

// r3eval: collision-risk ranking and risk-ranked recall evaluation.
//
// Exit codes: 0 success, 2 malformed input, 3 bad configuration or usage,
// 4 file system errors, 1 anything else.

#include "r3/r3.h"

#include <cstdio>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

namespace
{

constexpr int kUsageExit = R3_ERROR_CONFIG;

struct ConfigDeleter
{
  void operator()(r3_config * c) const { r3_config_free(c); }
};
struct ReportDeleter
{
  void operator()(r3_report * r) const { r3_report_free(r); }
};
struct ScenarioDeleter
{
  void operator()(r3_scenario * s) const { r3_scenario_free(s); }
};

using ConfigPtr = std::unique_ptr<r3_config, ConfigDeleter>;
using ReportPtr = std::unique_ptr<r3_report, ReportDeleter>;
using ScenarioPtr = std::unique_ptr<r3_scenario, ScenarioDeleter>;

struct Options
{
  double a_max = 7.5;
  double l_comp = 0.1;
  double dt = 0.1;
  double iog = 0.8;
  double iou = 0.8;
  std::string sweep = "0.5:0.95:0.05";
  std::string classes = "none";
  std::string format;
  std::string out = "-";
  unsigned threads = 1;
  bool quiet = false;

  std::string frames;
  std::string predictions;

  std::string spec_path;
  std::string kind;
  std::optional<std::uint64_t> seed;
  std::optional<int> frame_count;
  std::vector<std::string> params;
  bool with_predictions = false;
};

class Failure
{
public:
  explicit Failure(int code) : code_(code) {}
  int code() const { return code_; }

private:
  int code_;
};

void check(r3_status status)
{
  if (status != R3_OK) {
    std::fprintf(stderr, "r3eval: %s: %s\n", r3_status_name(status), r3_last_error());
    throw Failure(status == R3_ERROR_NULL_ARGUMENT ? R3_ERROR_INTERNAL : status);
  }
}

[[noreturn]] void usage_error(const std::string & message)
{
  std::fprintf(stderr, "r3eval: %s\n", message.c_str());
  throw Failure(kUsageExit);
}

void print_warning(const char * message, void * user_data)
{
  if (*static_cast<const bool *>(user_data)) return;
  std::fprintf(stderr, "warning: %s\n", message);
}

void add_risk_flags(CLI::App * cmd, Options & o)
{
  cmd->add_option("--a-max", o.a_max, "Worst-case acceleration magnitude [m/s^2]")->capture_default_str();
  cmd->add_option("--l-comp", o.l_comp, "Sensor-to-actuation latency [s]")->capture_default_str();
  cmd->add_option("--dt", o.dt, "Time grid step [s]")->capture_default_str();
}

void add_eval_flags(CLI::App * cmd, Options & o)
{
  cmd->add_option("frames", o.frames, "Frames file (.frames.jsonl)")->required();
  cmd->add_option("predictions", o.predictions, "Predictions file (.jsonl)");
  add_risk_flags(cmd, o);
  cmd->add_option("--iog", o.iog, "IoG threshold for risk-ranked recall")->capture_default_str();
  cmd->add_option("--iou", o.iou, "IoU threshold for recall and precision")->capture_default_str();
  cmd->add_option("--sweep", o.sweep, "Confidence sweep start:stop:step")->capture_default_str();
  cmd->add_option("--classes", o.classes, "Ground-truth class filter")
    ->check(CLI::IsMember({"preset", "none"}))
    ->capture_default_str();
  cmd->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", o.out, "Output path, '-' for stdout")->capture_default_str();
  cmd->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
  cmd->add_flag("--quiet", o.quiet, "Suppress warnings");
}

ConfigPtr make_config(const Options & o)
{
  r3_config * raw = nullptr;
  check(r3_config_new(&raw));
  ConfigPtr config(raw);
  check(r3_config_set_risk(config.get(), r3_risk_params{o.a_max, o.l_comp, o.dt}));
  return config;
}

std::vector<double> parse_sweep(const std::string & text)
{
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception &) {
      usage_error("--sweep expects start:stop:step, got '" + text + "'");
    }
  }
  if (parts.size() != 3) usage_error("--sweep expects start:stop:step, got '" + text + "'");
  return parts;
}

int run_rank(const Options & o)
{
  ConfigPtr config = make_config(o);
  check(r3_rank_file(config.get(), o.frames.c_str(), o.out.c_str()));
  return 0;
}

int run_evaluate(const Options & o, const char * default_format)
{
  ConfigPtr config = make_config(o);
  check(r3_config_set_thresholds(config.get(), o.iog, o.iou));
  const std::vector<double> sweep = parse_sweep(o.sweep);
  check(r3_config_set_sweep_range(config.get(), sweep[0], sweep[1], sweep[2]));
  check(r3_config_set_class_preset(config.get(), o.classes == "preset"));
  check(r3_config_set_threads(config.get(), o.threads));

  r3_report * raw = nullptr;
  check(r3_evaluate_files(
    config.get(), o.frames.c_str(), o.predictions.empty() ? nullptr : o.predictions.c_str(), &raw));
  ReportPtr report(raw);

  const std::string format = o.format.empty() ? default_format : o.format;
  check(r3_report_write(report.get(), format == "csv" ? R3_FORMAT_CSV : R3_FORMAT_JSON, o.out.c_str()));
  return 0;
}

int run_generate(const Options & o)
{
  r3_scenario * raw = nullptr;
  if (!o.spec_path.empty()) {
    if (!o.kind.empty()) usage_error("give either a spec file or --kind, not both");
    check(r3_scenario_load(o.spec_path.c_str(), &raw));
  } else {
    if (o.kind.empty()) usage_error("generate needs a spec file or --kind");
    check(r3_scenario_new(o.kind.c_str(), &raw));
  }
  ScenarioPtr scenario(raw);

  if (o.seed) check(r3_scenario_set_seed(scenario.get(), *o.seed));
  if (o.frame_count) check(r3_scenario_set_frames(scenario.get(), *o.frame_count));
  check(r3_scenario_set_risk(scenario.get(), r3_risk_params{o.a_max, o.l_comp, o.dt}));
  for (const std::string & kv : o.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) usage_error("--param expects name=value, got '" + kv + "'");
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(kv.substr(eq + 1), &used);
      if (used != kv.size() - eq - 1) throw std::invalid_argument(kv);
    } catch (const std::exception &) {
      usage_error("--param value is not a number: '" + kv + "'");
    }
    check(r3_scenario_set_param(scenario.get(), kv.substr(0, eq).c_str(), value));
  }

  if (o.out == "-" || o.out.empty()) usage_error("generate needs --out PREFIX");
  const std::string frames = o.out + ".frames.jsonl";
  const std::string expected = o.out + ".expected.jsonl";
  const std::string predictions = o.out + ".predictions.jsonl";
  check(r3_scenario_generate(
    scenario.get(), frames.c_str(), expected.c_str(),
    o.with_predictions ? predictions.c_str() : nullptr));
  return 0;
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"Collision-risk ranking and risk-ranked recall for object detection"};
  app.set_version_flag("--version", std::string(r3_version()));
  app.require_subcommand(1);

  Options o;

  auto * rank = app.add_subcommand("rank", "Rank every labeled object of a frames file");
  rank->add_option("frames", o.frames, "Frames file (.frames.jsonl)")->required();
  add_risk_flags(rank, o);
  rank->add_option("--out", o.out, "Output path, '-' for stdout")->capture_default_str();
  rank->add_flag("--quiet", o.quiet, "Suppress warnings");

  auto * evaluate = app.add_subcommand("evaluate", "Evaluate predictions; JSON report by default");
  add_eval_flags(evaluate, o);

  auto * sweep = app.add_subcommand("sweep", "Evaluate predictions; CSV sweep table by default");
  add_eval_flags(sweep, o);

  auto * generate = app.add_subcommand("generate", "Write synthetic scenario frames and expected ranks");
  generate->add_option("spec", o.spec_path, "Scenario spec file (JSON)");
  generate->add_option("--kind", o.kind, "head_on, crossing, parked_near, parked_far or cut_in");
  generate->add_option("--seed", o.seed, "Jitter seed");
  generate->add_option("--frames", o.frame_count, "Frames per scenario");
  generate->add_option("--param", o.params, "Scenario parameter override name=value");
  add_risk_flags(generate, o);
  generate->add_option("--out", o.out, "Output prefix")->required();
  generate->add_flag("--predictions", o.with_predictions, "Also write synthetic detections");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp & e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp & e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion & e) {
    return app.exit(e);
  } catch (const CLI::ParseError & e) {
    app.exit(e);
    return kUsageExit;
  }

  r3_set_warning_handler(print_warning, &o.quiet);
  try {
    if (rank->parsed()) return run_rank(o);
    if (evaluate->parsed()) return run_evaluate(o, "json");
    if (sweep->parsed()) return run_evaluate(o, "csv");
    if (generate->parsed()) return run_generate(o);
  } catch (const Failure & f) {
    return f.code();
  }
  return kUsageExit;
}
