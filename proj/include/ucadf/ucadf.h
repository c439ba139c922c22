// SPDX-License-Identifier: Apache-2.0
//
// ucadf - direction finding with switched uniform circular arrays
// Copyright (C) 2026 The ucadf authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef UCADF_UCADF_H
#define UCADF_UCADF_H

#include <stddef.h>
#include <stdint.h>

#if defined(UCADF_BUILDING_LIBRARY)
#define UCADF_API __attribute__((visibility("default")))
#else
#define UCADF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ucadf_status
{
    UCADF_OK = 0,
    UCADF_ERR_INVALID_ARGUMENT = 1,
    UCADF_ERR_CONFIG = 2,
    UCADF_ERR_DATA = 3,
    UCADF_ERR_IO = 4,
    UCADF_ERR_NUMERIC = 5,
    UCADF_ERR_INTERNAL = 6
} ucadf_status;

/* Message of the last failing call on this thread, "" if none. */
UCADF_API const char *ucadf_last_error(void);
UCADF_API const char *ucadf_status_name(ucadf_status status);
UCADF_API const char *ucadf_version(void);

typedef struct ucadf_scenario ucadf_scenario;
typedef struct ucadf_recording ucadf_recording;
typedef struct ucadf_calibration ucadf_calibration;
typedef struct ucadf_estimator ucadf_estimator;
typedef struct ucadf_report ucadf_report;

typedef struct ucadf_estimator_options
{
    int h;
    int forward_backward;
    int n_expected;
    double grid_deg;
    double track_alpha;
    double hold_threshold_db;
} ucadf_estimator_options;

UCADF_API void ucadf_estimator_options_default(ucadf_estimator_options *options);

/* Scenarios */
UCADF_API ucadf_status ucadf_scenario_load(const char *path, ucadf_scenario **out);
UCADF_API ucadf_status ucadf_scenario_parse(const char *text, const char *source_name, ucadf_scenario **out);
UCADF_API void ucadf_scenario_free(ucadf_scenario *scenario);
UCADF_API ucadf_status ucadf_scenario_set_seed(ucadf_scenario *scenario, uint64_t seed);
UCADF_API ucadf_status ucadf_scenario_get_seed(const ucadf_scenario *scenario, uint64_t *seed);
UCADF_API ucadf_status ucadf_scenario_get_estimator(const ucadf_scenario *scenario, ucadf_estimator_options *out);
UCADF_API ucadf_status ucadf_scenario_set_estimator(ucadf_scenario *scenario, const ucadf_estimator_options *options);

typedef enum ucadf_session
{
    UCADF_SESSION_SCENE = 0,       /* chunks / trajectory of the scenario */
    UCADF_SESSION_CALIBRATION = 1, /* one probe per calibration angle */
    UCADF_SESSION_TEST = 2         /* one target per test angle */
} ucadf_session;

UCADF_API ucadf_status ucadf_scenario_simulate(const ucadf_scenario *scenario, ucadf_session session,
                                               ucadf_recording **out);

/* Recordings: base.json sidecar plus base.cf32 payload */
UCADF_API ucadf_status ucadf_recording_read(const char *path, ucadf_recording **out);
UCADF_API ucadf_status ucadf_recording_write(const ucadf_recording *recording, const char *path);
UCADF_API void ucadf_recording_free(ucadf_recording *recording);
UCADF_API size_t ucadf_recording_chunk_count(const ucadf_recording *recording);
UCADF_API int ucadf_recording_n_elements(const ucadf_recording *recording);

/* Calibration */
typedef struct ucadf_calibration_info
{
    int n_elements;
    int n_angles;
    double residual;
    double condition_number; /* +inf for a singular A A^H */
    int pseudo_inverse;
    int underdetermined;
} ucadf_calibration_info;

/* Chunks of all recordings, in order, are the probes. angles_deg gives one
   angle per chunk or is NULL to use the per-chunk truth labels. */
UCADF_API ucadf_status ucadf_calibration_from_recordings(const ucadf_recording *const *recordings,
                                                         size_t n_recordings, const double *angles_deg,
                                                         size_t n_angles, ucadf_calibration **out);
UCADF_API ucadf_status ucadf_calibration_ideal(const ucadf_scenario *scenario, double spacing_deg,
                                               ucadf_calibration **out);
UCADF_API ucadf_status ucadf_calibration_load(const char *path, ucadf_calibration **out);
UCADF_API ucadf_status ucadf_calibration_save(const ucadf_calibration *calibration, const char *path);
UCADF_API ucadf_status ucadf_calibration_get_info(const ucadf_calibration *calibration, ucadf_calibration_info *out);
UCADF_API void ucadf_calibration_free(ucadf_calibration *calibration);

/* Estimation */
typedef struct ucadf_chunk_result
{
    int64_t chunk_id;
    double time_s;
    int has_estimate;
    double estimate_deg; /* NaN without an estimate */
    double sll_db;
    double truth_deg; /* NaN when the chunk carries no label */
    int n_peaks;
} ucadf_chunk_result;

UCADF_API ucadf_status ucadf_estimator_create(const ucadf_calibration *calibration,
                                              const ucadf_estimator_options *options, ucadf_estimator **out);
UCADF_API void ucadf_estimator_free(ucadf_estimator *estimator);
UCADF_API ucadf_status ucadf_estimator_process(const ucadf_estimator *estimator, const ucadf_recording *recording,
                                               size_t chunk_index, ucadf_chunk_result *out);
/* `angle_deg,power_db` for one chunk */
UCADF_API ucadf_status ucadf_estimator_write_spectrum(const ucadf_estimator *estimator,
                                                      const ucadf_recording *recording, size_t chunk_index,
                                                      const char *path);
/* Estimates and smoothed track for every chunk, as CSV. */
UCADF_API ucadf_status ucadf_estimator_write_track(const ucadf_estimator *estimator, const ucadf_recording *recording,
                                                   const char *path);

/* Reports */
typedef struct ucadf_report_summary
{
    size_t samples;
    size_t missing;
    double mae_deg;
    double std_deg;
    double sll_mean_db;
    double sll_std_db;
} ucadf_report_summary;

UCADF_API ucadf_status ucadf_evaluate(const ucadf_estimator *estimator, const ucadf_recording *recording,
                                      double bin_width_deg, ucadf_report **out);
/* Calibrate-then-test protocol for seeds seed, seed+1, ... */
UCADF_API ucadf_status ucadf_sweep_run(const ucadf_scenario *scenario, int n_seeds, ucadf_report **out);
UCADF_API ucadf_status ucadf_report_get_summary(const ucadf_report *report, ucadf_report_summary *out);
UCADF_API ucadf_status ucadf_report_write_csv(const ucadf_report *report, const char *path);
UCADF_API void ucadf_report_free(ucadf_report *report);

#ifdef __cplusplus
}
#endif

#endif
