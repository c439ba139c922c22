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

#include "ucadf/ucadf.h"

#include <cmath>
#include <fstream>
#include <limits>
#include <new>
#include <string>

#include "ucadf/error.hpp"
#include "ucadf/evaluation.hpp"
#include "ucadf/io.hpp"
#include "ucadf/pipeline.hpp"
#include "ucadf/scenario.hpp"

struct ucadf_scenario
{
    ucadf::ScenarioConfig config;
};

struct ucadf_recording
{
    ucadf::Recording recording;
};

struct ucadf_calibration
{
    ucadf::CalibrationMatrix matrix;
};

struct ucadf_estimator
{
    ucadf::DoaEstimator estimator;
    ucadf::EstimatorConfig config;
};

struct ucadf_report
{
    std::vector<ucadf::LabeledSweep> datasets;
};

namespace {

thread_local std::string last_error;

ucadf_status fail(ucadf_status status, const std::string &msg)
{
    last_error = msg;
    return status;
}

ucadf_status status_of(ucadf::Error::Category c)
{
    switch (c)
    {
    case ucadf::Error::Category::config: return UCADF_ERR_CONFIG;
    case ucadf::Error::Category::data: return UCADF_ERR_DATA;
    case ucadf::Error::Category::io: return UCADF_ERR_IO;
    case ucadf::Error::Category::numeric: return UCADF_ERR_NUMERIC;
    }
    return UCADF_ERR_INTERNAL;
}

template <class F>
ucadf_status guarded(F &&body)
{
    try
    {
        body();
        last_error.clear();
        return UCADF_OK;
    }
    catch (const ucadf::Error &e)
    {
        return fail(status_of(e.category()), e.what());
    }
    catch (const std::bad_alloc &)
    {
        return fail(UCADF_ERR_INTERNAL, "out of memory");
    }
    catch (const std::exception &e)
    {
        return fail(UCADF_ERR_INTERNAL, e.what());
    }
}

#define UCADF_REQUIRE(cond)                                                                                           \
    do                                                                                                                 \
    {                                                                                                                  \
        if (!(cond))                                                                                                   \
            return fail(UCADF_ERR_INVALID_ARGUMENT, "invalid argument: " #cond);                                       \
    } while (0)

ucadf::EstimatorConfig to_config(const ucadf_estimator_options &o)
{
    ucadf::EstimatorConfig c;
    c.smoothing.h = o.h;
    c.smoothing.forward_backward = o.forward_backward != 0;
    c.smoothing.n_expected = o.n_expected;
    c.grid_step_deg = o.grid_deg;
    c.track_alpha = o.track_alpha;
    c.hold_threshold_db = o.hold_threshold_db;
    return c;
}

ucadf_estimator_options to_options(const ucadf::EstimatorConfig &c)
{
    ucadf_estimator_options o;
    o.h = c.smoothing.h;
    o.forward_backward = c.smoothing.forward_backward ? 1 : 0;
    o.n_expected = c.smoothing.n_expected;
    o.grid_deg = c.grid_step_deg;
    o.track_alpha = c.track_alpha;
    o.hold_threshold_db = c.hold_threshold_db;
    return o;
}

void check_chunk_index(const ucadf_recording *rec, size_t index)
{
    if (index >= rec->recording.chunks.size())
        throw ucadf::DataError("chunk index " + std::to_string(index) + " out of range (" +
                               std::to_string(rec->recording.chunks.size()) + " chunks)");
}

void check_elements(const ucadf_estimator *est, const ucadf_recording *rec)
{
    if (est->estimator.n_elements() != rec->recording.header.n_elements)
        throw ucadf::DataError("recording has " + std::to_string(rec->recording.header.n_elements) +
                               " elements, calibration has " + std::to_string(est->estimator.n_elements()));
}

std::ofstream open_out(const char *path)
{
    std::ofstream out(path);
    if (!out)
        throw ucadf::IoError(std::string("cannot write ") + path);
    return out;
}

ucadf::ErrorStats pooled_stats(const ucadf_report *report, ucadf::SweepResult &pooled)
{
    std::vector<ucadf::SweepResult> parts;
    for (const auto &d : report->datasets)
        parts.push_back(d.result);
    pooled = ucadf::pool(parts);
    return ucadf::mean_abs_error(pooled);
}

} // namespace

extern "C" {

const char *ucadf_last_error(void) { return last_error.c_str(); }

const char *ucadf_status_name(ucadf_status status)
{
    switch (status)
    {
    case UCADF_OK: return "ok";
    case UCADF_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case UCADF_ERR_CONFIG: return "config";
    case UCADF_ERR_DATA: return "data";
    case UCADF_ERR_IO: return "io";
    case UCADF_ERR_NUMERIC: return "numeric";
    case UCADF_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

const char *ucadf_version(void) { return "0.1.0"; }

void ucadf_estimator_options_default(ucadf_estimator_options *options)
{
    if (options)
        *options = to_options(ucadf::EstimatorConfig{});
}

ucadf_status ucadf_scenario_load(const char *path, ucadf_scenario **out)
{
    UCADF_REQUIRE(path && out);
    return guarded([&] { *out = new ucadf_scenario{ucadf::load_scenario(path)}; });
}

ucadf_status ucadf_scenario_parse(const char *text, const char *source_name, ucadf_scenario **out)
{
    UCADF_REQUIRE(text && out);
    return guarded([&] {
        *out = new ucadf_scenario{ucadf::parse_scenario(text, source_name ? source_name : "<scenario>")};
    });
}

void ucadf_scenario_free(ucadf_scenario *scenario) { delete scenario; }

ucadf_status ucadf_scenario_set_seed(ucadf_scenario *scenario, uint64_t seed)
{
    UCADF_REQUIRE(scenario);
    scenario->config.seed = seed;
    return UCADF_OK;
}

ucadf_status ucadf_scenario_get_seed(const ucadf_scenario *scenario, uint64_t *seed)
{
    UCADF_REQUIRE(scenario && seed);
    *seed = scenario->config.seed;
    return UCADF_OK;
}

ucadf_status ucadf_scenario_get_estimator(const ucadf_scenario *scenario, ucadf_estimator_options *out)
{
    UCADF_REQUIRE(scenario && out);
    *out = to_options(scenario->config.estimator);
    return UCADF_OK;
}

ucadf_status ucadf_scenario_set_estimator(ucadf_scenario *scenario, const ucadf_estimator_options *options)
{
    UCADF_REQUIRE(scenario && options);
    return guarded([&] {
        auto config = scenario->config;
        config.estimator = to_config(*options);
        config.validate();
        if (!(config.estimator.grid_step_deg > 0.0 && config.estimator.grid_step_deg <= 360.0))
            throw ucadf::ConfigError("grid_deg must lie in (0, 360]");
        scenario->config = std::move(config);
    });
}

ucadf_status ucadf_scenario_simulate(const ucadf_scenario *scenario, ucadf_session session, ucadf_recording **out)
{
    UCADF_REQUIRE(scenario && out);
    return guarded([&] {
        const auto &cfg = scenario->config;
        std::vector<ucadf::TdmChunk> chunks;
        switch (session)
        {
        case UCADF_SESSION_SCENE: chunks = cfg.simulate(); break;
        case UCADF_SESSION_CALIBRATION:
            chunks = cfg.simulate_at(cfg.sweep.calibration_angles_rad(), cfg.sweep.chunks_per_angle, cfg.seed, 1);
            break;
        case UCADF_SESSION_TEST:
            chunks = cfg.simulate_at(cfg.sweep.test_angles_rad(), cfg.sweep.chunks_per_angle, cfg.seed, 2);
            break;
        default: throw ucadf::ConfigError("unknown session kind");
        }
        *out = new ucadf_recording{ucadf::make_recording(std::move(chunks))};
    });
}

ucadf_status ucadf_recording_read(const char *path, ucadf_recording **out)
{
    UCADF_REQUIRE(path && out);
    return guarded([&] { *out = new ucadf_recording{ucadf::read_recording(path)}; });
}

ucadf_status ucadf_recording_write(const ucadf_recording *recording, const char *path)
{
    UCADF_REQUIRE(recording && path);
    return guarded([&] { ucadf::write_recording(recording->recording, path); });
}

void ucadf_recording_free(ucadf_recording *recording) { delete recording; }

size_t ucadf_recording_chunk_count(const ucadf_recording *recording)
{
    return recording ? recording->recording.chunks.size() : 0;
}

int ucadf_recording_n_elements(const ucadf_recording *recording)
{
    return recording ? recording->recording.header.n_elements : 0;
}

ucadf_status ucadf_calibration_from_recordings(const ucadf_recording *const *recordings, size_t n_recordings,
                                               const double *angles_deg, size_t n_angles, ucadf_calibration **out)
{
    UCADF_REQUIRE(recordings && n_recordings > 0 && out);
    UCADF_REQUIRE(angles_deg || n_angles == 0);
    for (size_t i = 0; i < n_recordings; ++i)
        UCADF_REQUIRE(recordings[i]);
    return guarded([&] {
        std::vector<ucadf::TdmChunk> chunks;
        const int n = recordings[0]->recording.header.n_elements;
        for (size_t i = 0; i < n_recordings; ++i)
        {
            const auto &rec = recordings[i]->recording;
            if (rec.header.n_elements != n)
                throw ucadf::DataError("calibration recordings differ in element count");
            chunks.insert(chunks.end(), rec.chunks.begin(), rec.chunks.end());
        }
        std::optional<std::vector<double>> angles;
        if (angles_deg)
        {
            angles.emplace();
            for (size_t i = 0; i < n_angles; ++i)
                angles->push_back(ucadf::deg_to_rad(angles_deg[i]));
        }
        *out = new ucadf_calibration{ucadf::calibrate_from_chunks(chunks, angles)};
    });
}

ucadf_status ucadf_calibration_ideal(const ucadf_scenario *scenario, double spacing_deg, ucadf_calibration **out)
{
    UCADF_REQUIRE(scenario && out);
    return guarded([&] {
        *out = new ucadf_calibration{
            ucadf::ideal_calibration(scenario->config.geometry(), ucadf::deg_to_rad(spacing_deg))};
    });
}

ucadf_status ucadf_calibration_load(const char *path, ucadf_calibration **out)
{
    UCADF_REQUIRE(path && out);
    return guarded([&] { *out = new ucadf_calibration{ucadf::load_calibration(path)}; });
}

ucadf_status ucadf_calibration_save(const ucadf_calibration *calibration, const char *path)
{
    UCADF_REQUIRE(calibration && path);
    return guarded([&] { ucadf::save_calibration(calibration->matrix, path); });
}

ucadf_status ucadf_calibration_get_info(const ucadf_calibration *calibration, ucadf_calibration_info *out)
{
    UCADF_REQUIRE(calibration && out);
    const auto &m = calibration->matrix;
    out->n_elements = m.n_elements();
    out->n_angles = static_cast<int>(m.source_angles_rad.size());
    out->residual = m.residual;
    out->condition_number = m.condition_number;
    out->pseudo_inverse = m.pseudo_inverse ? 1 : 0;
    out->underdetermined = m.underdetermined ? 1 : 0;
    return UCADF_OK;
}

void ucadf_calibration_free(ucadf_calibration *calibration) { delete calibration; }

ucadf_status ucadf_estimator_create(const ucadf_calibration *calibration, const ucadf_estimator_options *options,
                                    ucadf_estimator **out)
{
    UCADF_REQUIRE(calibration && out);
    return guarded([&] {
        const auto config = options ? to_config(*options) : ucadf::EstimatorConfig{};
        *out = new ucadf_estimator{ucadf::DoaEstimator(calibration->matrix, config), config};
    });
}

void ucadf_estimator_free(ucadf_estimator *estimator) { delete estimator; }

ucadf_status ucadf_estimator_process(const ucadf_estimator *estimator, const ucadf_recording *recording,
                                     size_t chunk_index, ucadf_chunk_result *out)
{
    UCADF_REQUIRE(estimator && recording && out);
    return guarded([&] {
        check_elements(estimator, recording);
        check_chunk_index(recording, chunk_index);
        const auto &chunk = recording->recording.chunks[chunk_index];
        const auto r = estimator->estimator.process(chunk);
        const double nan = std::numeric_limits<double>::quiet_NaN();
        out->chunk_id = chunk.chunk_id;
        out->time_s = chunk.timestamp_s;
        out->has_estimate = r.estimate ? 1 : 0;
        out->estimate_deg = r.estimate ? ucadf::rad_to_deg(r.estimate->angle_rad) : nan;
        out->sll_db = r.estimate ? r.estimate->sll_db : nan;
        out->truth_deg = chunk.truth_azimuth_rad ? ucadf::wrap_degrees(ucadf::rad_to_deg(*chunk.truth_azimuth_rad))
                                                 : nan;
        out->n_peaks = static_cast<int>(r.spectrum.peaks.size());
    });
}

ucadf_status ucadf_estimator_write_spectrum(const ucadf_estimator *estimator, const ucadf_recording *recording,
                                            size_t chunk_index, const char *path)
{
    UCADF_REQUIRE(estimator && recording && path);
    return guarded([&] {
        check_elements(estimator, recording);
        check_chunk_index(recording, chunk_index);
        const auto r = estimator->estimator.process(recording->recording.chunks[chunk_index]);
        auto out = open_out(path);
        ucadf::write_spectrum_csv(out, r.spectrum);
    });
}

ucadf_status ucadf_estimator_write_track(const ucadf_estimator *estimator, const ucadf_recording *recording,
                                         const char *path)
{
    UCADF_REQUIRE(estimator && recording && path);
    return guarded([&] {
        check_elements(estimator, recording);
        ucadf::DoaTracker tracker(estimator->config.track_alpha, estimator->config.hold_threshold_db);
        std::vector<ucadf::TrackRow> rows;
        for (const auto &chunk : recording->recording.chunks)
        {
            const auto r = estimator->estimator.process(chunk);
            const bool moved = tracker.update(r.estimate);
            ucadf::TrackRow row;
            row.chunk_id = chunk.chunk_id;
            row.time_s = chunk.timestamp_s;
            if (r.estimate)
            {
                row.estimate_deg = ucadf::rad_to_deg(r.estimate->angle_rad);
                row.sll_db = r.estimate->sll_db;
            }
            else
                row.sll_db = std::numeric_limits<double>::quiet_NaN();
            row.track_deg = tracker.state().initialized ? ucadf::rad_to_deg(tracker.state().smoothed_angle_rad)
                                                        : std::numeric_limits<double>::quiet_NaN();
            row.held = !moved;
            rows.push_back(row);
        }
        auto out = open_out(path);
        ucadf::write_track_csv(out, rows);
    });
}

ucadf_status ucadf_evaluate(const ucadf_estimator *estimator, const ucadf_recording *recording,
                            double bin_width_deg, ucadf_report **out)
{
    UCADF_REQUIRE(estimator && recording && out);
    return guarded([&] {
        check_elements(estimator, recording);
        auto result = ucadf::evaluate_chunks(estimator->estimator, recording->recording.chunks, bin_width_deg);
        auto *report = new ucadf_report;
        report->datasets.push_back({"recording", std::move(result)});
        *out = report;
    });
}

ucadf_status ucadf_sweep_run(const ucadf_scenario *scenario, int n_seeds, ucadf_report **out)
{
    UCADF_REQUIRE(scenario && out && n_seeds > 0);
    return guarded([&] {
        const auto runs = ucadf::run_sweep(scenario->config, n_seeds);
        auto *report = new ucadf_report;
        for (const auto &run : runs)
            report->datasets.push_back({"seed=" + std::to_string(run.seed), run.result});
        *out = report;
    });
}

ucadf_status ucadf_report_get_summary(const ucadf_report *report, ucadf_report_summary *out)
{
    UCADF_REQUIRE(report && out);
    return guarded([&] {
        ucadf::SweepResult pooled;
        const auto err = pooled_stats(report, pooled);
        const auto sll = ucadf::sll_stats(pooled);
        out->samples = pooled.size();
        out->missing = pooled.missing();
        out->mae_deg = err.mae_deg;
        out->std_deg = err.std_deg;
        out->sll_mean_db = sll.mean_db;
        out->sll_std_db = sll.std_db;
    });
}

ucadf_status ucadf_report_write_csv(const ucadf_report *report, const char *path)
{
    UCADF_REQUIRE(report && path);
    return guarded([&] {
        auto out = open_out(path);
        ucadf::write_report_csv(out, report->datasets);
    });
}

void ucadf_report_free(ucadf_report *report) { delete report; }

} // extern "C"
