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

#include <doctest.h>

#include <string>

#include "ucadf/error.hpp"
#include "ucadf/evaluation.hpp"
#include "ucadf/scenario.hpp"

using namespace ucadf;
using doctest::Approx;

namespace {

std::string error_of(const std::string &text)
{
    try
    {
        parse_scenario(text, "s.yaml");
    }
    catch (const ConfigError &e)
    {
        return e.what();
    }
    return {};
}

const char *minimal = "sources:\n  - azimuth_deg: 30\n";

} // namespace

TEST_CASE("minimal scenario takes the defaults")
{
    const auto cfg = parse_scenario(minimal);
    CHECK(cfg.n_elements == 8);
    CHECK(cfg.radius_wavelengths == 0.5);
    CHECK(cfg.radio.f_if_hz() == Approx(50e3));
    CHECK(cfg.schedule.samples_per_slot == 10000);
    CHECK(cfg.schedule.margin_samples == 4000);
    REQUIRE(cfg.sources.size() == 1);
    CHECK(cfg.sources[0].azimuth_rad == Approx(deg_to_rad(30.0)));
    CHECK(cfg.sources[0].frequency_hz == Approx(50e3));
    CHECK(cfg.estimator.smoothing.h == 3);
    CHECK(cfg.estimator.smoothing.forward_backward);
    CHECK(cfg.estimator.grid_step_deg == 0.5);
    CHECK(cfg.sweep.calibration_spacing_deg == 20.0);
    CHECK(cfg.sweep.calibration_angles_rad().size() == 18);
    CHECK(cfg.sweep.test_angles_rad().size() == 36);
    CHECK(cfg.geometry().radius_m() == Approx(0.5 * cfg.radio.wavelength_m()));
}

TEST_CASE("full scenario")
{
    const std::string text = R"(
geometry: {n_elements: 6, radius_m: 0.05}
radio: {f_tx_hz: 2.4e9, f_rx_hz: 2.39990e9, f_s_hz: 1.0e6}
schedule:
  samples_per_slot: 1000
  margin_samples: 200
  slot_phases_cycles: [0, 0.1, 0.2, 0.3, 0.4, 0.5]
sources:
  - {amplitude: 2.0, phase_cycles: 0.25, azimuth_deg: 45}
  - {amplitude: 0.5, frequency_hz: 30000, azimuth_deg: 200}
chunks: {trajectory_deg: [0, 10, 20]}
imperfections:
  snapshot_snr_db: 15
  switch_phase_error_deg: [1, -1, 2, -2, 0, 3]
  per_port_gain: [1, 1, [0.9, 0.1], 1, 1, 1]
estimator: {h: 2, forward_backward: false, n_expected: 2, grid_deg: 1.0, track_alpha: 0.3, hold_threshold_db: 5}
sweep: {calibration_spacing_deg: 30, test_start_deg: 15, test_step_deg: 30, chunks_per_angle: 2, bin_width_deg: 90}
seed: 42
)";
    const auto cfg = parse_scenario(text);
    CHECK(cfg.n_elements == 6);
    CHECK(cfg.schedule.n_slots == 6);
    CHECK(*cfg.radius_m == 0.05);
    CHECK(cfg.radio.f_if_hz() == Approx(100e3));
    CHECK(cfg.schedule.slot_phases.size() == 6);
    CHECK(cfg.sources[1].frequency_hz == 30000);
    CHECK(cfg.trajectory_rad.size() == 3);
    CHECK(*cfg.snapshot_snr_db == 15);
    CHECK(cfg.imperfections.per_port_gain(2) == cdouble(0.9, 0.1));
    CHECK(cfg.estimator.smoothing.h == 2);
    CHECK_FALSE(cfg.estimator.smoothing.forward_backward);
    CHECK(cfg.estimator.track_alpha == 0.3);
    CHECK(cfg.sweep.chunks_per_angle == 2);
    CHECK(cfg.sweep.test_angles_rad().size() == 12);
    CHECK(cfg.seed == 42);

    const auto imp = cfg.resolve_imperfections(cfg.seed);
    CHECK(imp.noise_sigma == Approx(noise_sigma_for_snapshot_snr(2.0, 800, 15.0)));

    const auto chunks = cfg.simulate();
    REQUIRE(chunks.size() == 3);
    CHECK(*chunks[2].truth_azimuth_rad == Approx(deg_to_rad(20.0)));
    CHECK(chunks[0].array_channel.size() == 6000);
}

TEST_CASE("sweep chunks")
{
    const auto cfg = parse_scenario(std::string(minimal) + "chunks:\n  sweep: {start_deg: 10, step_deg: 20, count: 18}\n");
    REQUIRE(cfg.trajectory_rad.size() == 18);
    CHECK(rad_to_deg(cfg.trajectory_rad[17]) == Approx(350.0));
}

TEST_CASE("errors carry line and column")
{
    const auto unknown = error_of("sources:\n  - azimuth_deg: 30\n    azimuthh: 3\n");
    CHECK(unknown.rfind("s.yaml:3:5: ", 0) == 0);
    CHECK(unknown.find("azimuthh") != std::string::npos);

    const auto bad_number = error_of("geometry:\n  n_elements: eight\nsources: [{azimuth_deg: 0}]\n");
    CHECK(bad_number.rfind("s.yaml:2:15: ", 0) == 0);

    const auto margin = error_of("schedule:\n  samples_per_slot: 100\n  margin_samples: 100\nsources: [{}]\n");
    CHECK(margin.rfind("s.yaml:2:3: ", 0) == 0);
    CHECK(margin.find("margin_samples") != std::string::npos);

    const auto h = error_of("sources: [{}]\nestimator:\n  h: 9\n");
    CHECK(h.rfind("s.yaml:3:3: ", 0) == 0);

    const auto syntax = error_of("sources: [\n");
    CHECK(syntax.rfind("s.yaml:", 0) == 0);

    CHECK(error_of("geometry: {n_elements: 8}\n").find("sources") != std::string::npos);
    CHECK(error_of("sources: [{frequency_hz: 600000}]\n").find("Nyquist") != std::string::npos);
    CHECK(error_of("sources: [{}]\nimperfections: {switch_phase_error_deg: [5, 0, 0, 0, 0, 0, 0, 0]}\n")
              .find("3 deg") != std::string::npos);
    CHECK(error_of("sources: [{}]\nsweep: {bin_width_deg: 70}\n").find("divide 360") != std::string::npos);
    CHECK(error_of("radio: {f_rx_hz: 2.5e9}\nsources: [{}]\n").rfind("s.yaml:1:8: ", 0) == 0);
    CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.yaml"), IoError);
}

TEST_CASE("random imperfections are drawn once per seed")
{
    const auto cfg = parse_scenario(std::string(minimal) +
                                    "imperfections: {random_coupling: 0.2, random_switch_phase_error_deg: 3}\n");
    const auto a = cfg.resolve_imperfections(5), b = cfg.resolve_imperfections(5), c = cfg.resolve_imperfections(6);
    CHECK(a.coupling == b.coupling);
    CHECK(a.switch_phase_error_deg == b.switch_phase_error_deg);
    CHECK(a.coupling != c.coupling);
    REQUIRE(a.switch_phase_error_deg.size() == 8);
    for (double e : a.switch_phase_error_deg)
        CHECK(std::abs(e) <= 3.0);
    CHECK((a.coupling - CMatrix::Identity(8, 8)).norm() == Approx(0.2 * 8.0).epsilon(0.3));
}

TEST_CASE("protocol runs are reproducible")
{
    auto cfg = parse_scenario(
        "schedule: {samples_per_slot: 300, margin_samples: 100}\nsources: [{}]\n"
        "imperfections: {random_coupling: 0.2, random_switch_phase_error_deg: 3, snapshot_snr_db: 20}\n"
        "sweep: {test_start_deg: 10, test_step_deg: 20}\nseed: 3\n");
    const auto runs = run_sweep(cfg, 2);
    REQUIRE(runs.size() == 2);
    CHECK(runs[0].seed == 3);
    CHECK(runs[1].seed == 4);
    CHECK(runs[0].result.size() == 18);
    const auto again = run_protocol(cfg, 3);
    CHECK(again.result.estimated_angles_deg == runs[0].result.estimated_angles_deg);
    CHECK(again.calibration.b_matrix == runs[0].calibration.b_matrix);
    CHECK(runs[0].result.estimated_angles_deg != runs[1].result.estimated_angles_deg);
    CHECK_THROWS_AS(run_sweep(cfg, 0), ConfigError);
}
