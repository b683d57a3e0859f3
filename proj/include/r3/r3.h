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

/*
 * C interface to the r3eval library.
 *
 * Objects are opaque handles created by *_new / *_load and released with the
 * matching *_free. Every fallible call returns an r3_status; on failure the
 * message is available from r3_last_error() on the same thread until the
 * next failing call.
 */
#ifndef R3__R3_H_
#define R3__R3_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(R3_BUILDING_LIBRARY)
#    define R3_API __declspec(dllexport)
#  else
#    define R3_API __declspec(dllimport)
#  endif
#else
#  define R3_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Values 2..4 double as the CLI exit codes. */
typedef enum r3_status
{
  R3_OK = 0,
  R3_ERROR_INTERNAL = 1,
  R3_ERROR_PARSE = 2,        /* malformed input record or frame */
  R3_ERROR_CONFIG = 3,       /* invalid parameter or scenario spec */
  R3_ERROR_IO = 4,           /* file could not be opened, read or written */
  R3_ERROR_GEOMETRY = 5,     /* invalid box or state passed to a primitive */
  R3_ERROR_NULL_ARGUMENT = 6
} r3_status;

typedef enum r3_rank
{
  R3_RANK_IMMINENT = 1,
  R3_RANK_POTENTIAL = 2,
  R3_RANK_OTHER = 3
} r3_rank;

typedef enum r3_format
{
  R3_FORMAT_JSON = 0,
  R3_FORMAT_CSV = 1
} r3_format;

typedef struct r3_risk_params
{
  double a_max;  /* m/s^2 */
  double l_comp; /* s */
  double dt;     /* s */
} r3_risk_params;

typedef struct r3_box
{
  double center_x, center_y; /* m */
  double heading;            /* rad */
  double length, width;      /* m */
} r3_box;

typedef struct r3_state
{
  double x, y;   /* m */
  double vx, vy; /* m/s */
  double heading;
  double length, width;
} r3_state;

typedef struct r3_image_box
{
  double x_min, y_min, x_max, y_max;
} r3_image_box;

typedef struct r3_sweep_point
{
  double conf_threshold;
  double r3[3];      /* indexed by rank - 1 */
  int r3_defined[3]; /* 0 when the rank has no ground truth */
  double recall;
  int recall_defined;
  double precision;
  int precision_defined;
} r3_sweep_point;

typedef struct r3_config r3_config;
typedef struct r3_report r3_report;
typedef struct r3_scenario r3_scenario;

typedef void (*r3_warning_fn)(const char * message, void * user_data);

R3_API const char * r3_version(void);
R3_API const char * r3_last_error(void);
R3_API const char * r3_status_name(r3_status status);
R3_API const char * r3_rank_name(r3_rank rank);

/* Receives ingest warnings (missing velocity, dropped predictions...).
 * Pass NULL to discard them. Process-wide. */
R3_API void r3_set_warning_handler(r3_warning_fn fn, void * user_data);

/* --- configuration ------------------------------------------------------ */

/* Defaults: a_max 7.5, l_comp 0.1, dt 0.1, IoG 0.8, IoU 0.8, sweep
 * 0.5..0.95 step 0.05, no class filter, one thread. */
R3_API r3_status r3_config_new(r3_config ** out);
R3_API void r3_config_free(r3_config * config);
R3_API r3_status r3_config_set_risk(r3_config * config, r3_risk_params params);
R3_API r3_status r3_config_get_risk(const r3_config * config, r3_risk_params * out);
R3_API r3_status r3_config_set_thresholds(r3_config * config, double iog, double iou);
R3_API r3_status r3_config_set_sweep_range(r3_config * config, double start, double stop, double step);
R3_API r3_status r3_config_set_sweep(r3_config * config, const double * values, size_t count);
/* Non-zero enables the Pedestrian/Cycle/Vehicle/Road Sign filter. */
R3_API r3_status r3_config_set_class_preset(r3_config * config, int enabled);
R3_API r3_status r3_config_set_threads(r3_config * config, unsigned threads);

/* --- primitives --------------------------------------------------------- */

R3_API r3_status r3_time_to_stop(double vx, double vy, const r3_risk_params * params, double * out);
R3_API r3_status r3_obb_overlap(const r3_box * a, const r3_box * b, int * out);
R3_API r3_status r3_critical_distance(const r3_box * a, const r3_box * b, double * out);
R3_API r3_status r3_rank_object(
  const r3_state * ego, const r3_state * obj, const r3_risk_params * params, r3_rank * out);
R3_API r3_status r3_iog(const r3_image_box * gt, const r3_image_box * pred, double * out);
R3_API r3_status r3_iou(const r3_image_box * a, const r3_image_box * b, double * out);

/* --- file commands ------------------------------------------------------ */

/* Ranks every frame of a frames file. `out_path` "-" writes to stdout;
 * otherwise the file is replaced atomically. */
R3_API r3_status r3_rank_file(const r3_config * config, const char * frames_path, const char * out_path);

/* `predictions_path` may be NULL (every ground truth is a false negative). */
R3_API r3_status r3_evaluate_files(
  const r3_config * config, const char * frames_path, const char * predictions_path, r3_report ** out);

/* --- reports ------------------------------------------------------------ */

R3_API void r3_report_free(r3_report * report);
R3_API size_t r3_report_sweep_size(const r3_report * report);
R3_API r3_status r3_report_sweep_point(const r3_report * report, size_t index, r3_sweep_point * out);
R3_API uint64_t r3_report_total_objects(const r3_report * report);
R3_API uint64_t r3_report_rank_count(const r3_report * report, r3_rank rank);
R3_API size_t r3_report_warning_count(const r3_report * report);
/* Serialized report; the returned string lives as long as the report or
 * until the next call with the same report. */
R3_API r3_status r3_report_render(r3_report * report, r3_format format, const char ** out);
R3_API r3_status r3_report_write(const r3_report * report, r3_format format, const char * out_path);

/* --- scenarios ---------------------------------------------------------- */

/* kind: head_on, crossing, parked_near, parked_far, cut_in. */
R3_API r3_status r3_scenario_new(const char * kind, r3_scenario ** out);
/* Loads a JSON spec file holding one spec, an array, or {"scenarios": [...]}. */
R3_API r3_status r3_scenario_load(const char * spec_path, r3_scenario ** out);
R3_API void r3_scenario_free(r3_scenario * scenario);
/* The setters apply to every spec in the handle. */
R3_API r3_status r3_scenario_set_param(r3_scenario * scenario, const char * name, double value);
R3_API r3_status r3_scenario_set_seed(r3_scenario * scenario, uint64_t seed);
R3_API r3_status r3_scenario_set_frames(r3_scenario * scenario, int frames);
R3_API r3_status r3_scenario_set_risk(r3_scenario * scenario, r3_risk_params params);
/* Writes the frames file and the expected-rank sidecar; `predictions_path`
 * may be NULL, otherwise synthetic detections are written there too. */
R3_API r3_status r3_scenario_generate(
  const r3_scenario * scenario, const char * frames_path, const char * expected_path,
  const char * predictions_path);

#ifdef __cplusplus
}
#endif

#endif /* R3__R3_H_ */
