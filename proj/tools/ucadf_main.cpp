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

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ucadf/ucadf.h"

namespace {

constexpr int exit_usage = 2;
constexpr int exit_failure = 3;

struct CliError
{
    ucadf_status status;
};

void check(ucadf_status s)
{
    if (s != UCADF_OK)
        throw CliError{s};
}

int exit_code(ucadf_status s)
{
    return (s == UCADF_ERR_CONFIG || s == UCADF_ERR_INVALID_ARGUMENT) ? exit_usage : exit_failure;
}

template <class T, void (*Free)(T *)>
struct Handle
{
    T *ptr = nullptr;
    Handle() = default;
    Handle(const Handle &) = delete;
    Handle &operator=(const Handle &) = delete;
    ~Handle() { Free(ptr); }
    T **out() { return &ptr; }
    T *get() const { return ptr; }
};

using Scenario = Handle<ucadf_scenario, ucadf_scenario_free>;
using Recording = Handle<ucadf_recording, ucadf_recording_free>;
using Calibration = Handle<ucadf_calibration, ucadf_calibration_free>;
using Estimator = Handle<ucadf_estimator, ucadf_estimator_free>;
using Report = Handle<ucadf_report, ucadf_report_free>;

struct EstimatorFlags
{
    std::optional<int> h;
    std::optional<int> n_expected;
    std::optional<double> grid_deg;
    std::optional<bool> forward_backward;
    std::optional<double> track_alpha;
    std::optional<double> hold_threshold_db;

    void add_to(CLI::App *cmd)
    {
        cmd->set_help_flag("--help", "print this help and exit");
        cmd->add_option("--h", h, "smoothing parameter, subarray length 2h+1");
        cmd->add_option("--n-expected", n_expected, "number of expected sources");
        cmd->add_option("--grid-deg", grid_deg, "MUSIC probing grid step in degrees");
        cmd->add_flag("--forward-backward,!--no-forward-backward", forward_backward, "forward-backward averaging");
        cmd->add_option("--track-alpha", track_alpha, "tracker smoothing factor in (0, 1]");
        cmd->add_option("--hold-threshold-db", hold_threshold_db, "hold the track below this SLL");
    }

    void apply(ucadf_estimator_options &o) const
    {
        if (h)
            o.h = *h;
        if (n_expected)
            o.n_expected = *n_expected;
        if (grid_deg)
            o.grid_deg = *grid_deg;
        if (forward_backward)
            o.forward_backward = *forward_backward ? 1 : 0;
        if (track_alpha)
            o.track_alpha = *track_alpha;
        if (hold_threshold_db)
            o.hold_threshold_db = *hold_threshold_db;
    }
};

ucadf_session parse_session(const std::string &name)
{
    if (name == "scene")
        return UCADF_SESSION_SCENE;
    if (name == "calibration")
        return UCADF_SESSION_CALIBRATION;
    return UCADF_SESSION_TEST;
}

void print_summary(const ucadf_report *report)
{
    ucadf_report_summary s;
    check(ucadf_report_get_summary(report, &s));
    std::printf("samples %zu missing %zu mae_deg %.4f std_deg %.4f sll_mean_db %.3f sll_std_db %.3f\n", s.samples,
                s.missing, s.mae_deg, s.std_deg, s.sll_mean_db, s.sll_std_db);
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Direction finding with a switched uniform circular array"};
    app.set_version_flag("--version", std::string(ucadf_version()));
    app.require_subcommand(1);

    std::vector<std::string> calibration_recordings;
    std::string scenario_path, recording_path, calibration_path, out_path, spectrum_path, session = "scene";
    std::optional<std::uint64_t> seed;
    std::vector<double> angles_deg;
    double spacing_deg = 20.0, bin_width_deg = 60.0;
    std::size_t chunk_index = 0;
    int n_seeds = 1;
    bool ideal = false;
    EstimatorFlags est_flags;

    auto *sim = app.add_subcommand("simulate", "simulate a TDM recording from a scenario");
    sim->add_option("--scenario", scenario_path, "scenario YAML")->required()->check(CLI::ExistingFile);
    sim->add_option("--out", out_path, "output base path (writes .json and .cf32)")->required();
    sim->add_option("--session", session, "scene, calibration or test")
        ->check(CLI::IsMember({"scene", "calibration", "test"}));
    sim->add_option("--seed", seed, "override the scenario seed");

    auto *cal = app.add_subcommand("calibrate", "solve the calibration matrix");
    cal->add_option("--recording", calibration_recordings, "calibration recording(s), one probe per chunk");
    cal->add_option("--angles-deg", angles_deg, "probe angle per chunk (default: chunk labels)")->delimiter(',');
    cal->add_flag("--ideal", ideal, "ideal-array calibration from a scenario geometry");
    cal->add_option("--scenario", scenario_path, "scenario YAML (with --ideal)");
    cal->add_option("--spacing-deg", spacing_deg, "probe spacing (with --ideal)");
    cal->add_option("--out", out_path, "calibration JSON")->required();

    auto *est = app.add_subcommand("estimate", "estimate and track the DoA per chunk");
    est->add_option("--calibration", calibration_path, "calibration JSON")->required();
    est->add_option("--recording", recording_path, "recording base path")->required();
    est->add_option("--out", out_path, "track CSV")->required();
    est->add_option("--spectrum", spectrum_path, "also write the MUSIC spectrum of one chunk");
    est->add_option("--chunk", chunk_index, "chunk index for --spectrum");
    est_flags.add_to(est);

    auto *eval = app.add_subcommand("evaluate", "error statistics on a labelled recording");
    eval->add_option("--calibration", calibration_path, "calibration JSON")->required();
    eval->add_option("--recording", recording_path, "recording base path")->required();
    eval->add_option("--out", out_path, "report CSV")->required();
    eval->add_option("--bin-width-deg", bin_width_deg, "bin width, must divide 360");
    est_flags.add_to(eval);

    auto *sweep = app.add_subcommand("sweep", "calibrate-then-test protocol over seeds");
    sweep->add_option("--scenario", scenario_path, "scenario YAML")->required()->check(CLI::ExistingFile);
    sweep->add_option("--seeds", n_seeds, "number of seeds")->check(CLI::PositiveNumber);
    sweep->add_option("--seed", seed, "first seed");
    sweep->add_option("--out", out_path, "report CSV")->required();
    est_flags.add_to(sweep);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::Success &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        std::fprintf(stderr, "ucadf-error: usage: %s\n", e.what());
        std::fprintf(stderr, "%s", app.help().c_str());
        return exit_usage;
    }

    try
    {
        if (*sim)
        {
            Scenario sc;
            Recording rec;
            check(ucadf_scenario_load(scenario_path.c_str(), sc.out()));
            if (seed)
                check(ucadf_scenario_set_seed(sc.get(), *seed));
            check(ucadf_scenario_simulate(sc.get(), parse_session(session), rec.out()));
            check(ucadf_recording_write(rec.get(), out_path.c_str()));
            std::printf("wrote %zu chunks to %s\n", ucadf_recording_chunk_count(rec.get()), out_path.c_str());
        }
        else if (*cal)
        {
            Calibration c;
            if (ideal)
            {
                if (scenario_path.empty())
                {
                    std::fprintf(stderr, "ucadf-error: usage: --ideal needs --scenario\n");
                    return exit_usage;
                }
                Scenario sc;
                check(ucadf_scenario_load(scenario_path.c_str(), sc.out()));
                check(ucadf_calibration_ideal(sc.get(), spacing_deg, c.out()));
            }
            else
            {
                if (calibration_recordings.empty())
                {
                    std::fprintf(stderr, "ucadf-error: usage: calibrate needs --recording or --ideal\n");
                    return exit_usage;
                }
                std::vector<Recording> recs(calibration_recordings.size());
                std::vector<const ucadf_recording *> ptrs;
                for (std::size_t i = 0; i < recs.size(); ++i)
                {
                    check(ucadf_recording_read(calibration_recordings[i].c_str(), recs[i].out()));
                    ptrs.push_back(recs[i].get());
                }
                check(ucadf_calibration_from_recordings(ptrs.data(), ptrs.size(),
                                                        angles_deg.empty() ? nullptr : angles_deg.data(),
                                                        angles_deg.size(), c.out()));
            }
            check(ucadf_calibration_save(c.get(), out_path.c_str()));
            ucadf_calibration_info info;
            check(ucadf_calibration_get_info(c.get(), &info));
            std::printf("calibration: %d elements, %d angles, residual %.3e, cond %.3e%s%s\n", info.n_elements,
                        info.n_angles, info.residual, info.condition_number,
                        info.pseudo_inverse ? ", pseudo-inverse" : "", info.underdetermined ? ", underdetermined" : "");
        }
        else if (*est || *eval)
        {
            ucadf_estimator_options opts;
            ucadf_estimator_options_default(&opts);
            est_flags.apply(opts);
            Calibration c;
            Recording rec;
            Estimator e;
            check(ucadf_calibration_load(calibration_path.c_str(), c.out()));
            check(ucadf_recording_read(recording_path.c_str(), rec.out()));
            check(ucadf_estimator_create(c.get(), &opts, e.out()));
            if (*est)
            {
                check(ucadf_estimator_write_track(e.get(), rec.get(), out_path.c_str()));
                if (!spectrum_path.empty())
                    check(ucadf_estimator_write_spectrum(e.get(), rec.get(), chunk_index, spectrum_path.c_str()));
                std::printf("processed %zu chunks\n", ucadf_recording_chunk_count(rec.get()));
            }
            else
            {
                Report r;
                check(ucadf_evaluate(e.get(), rec.get(), bin_width_deg, r.out()));
                check(ucadf_report_write_csv(r.get(), out_path.c_str()));
                print_summary(r.get());
            }
        }
        else if (*sweep)
        {
            Scenario sc;
            Report r;
            check(ucadf_scenario_load(scenario_path.c_str(), sc.out()));
            if (seed)
                check(ucadf_scenario_set_seed(sc.get(), *seed));
            ucadf_estimator_options opts;
            check(ucadf_scenario_get_estimator(sc.get(), &opts));
            est_flags.apply(opts);
            check(ucadf_scenario_set_estimator(sc.get(), &opts));
            check(ucadf_sweep_run(sc.get(), n_seeds, r.out()));
            check(ucadf_report_write_csv(r.get(), out_path.c_str()));
            print_summary(r.get());
        }
    }
    catch (const CliError &e)
    {
        std::fprintf(stderr, "ucadf-error: %s: %s\n", ucadf_status_name(e.status), ucadf_last_error());
        return exit_code(e.status);
    }
    return 0;
}
