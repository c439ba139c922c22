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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ucadf/pipeline.hpp"
#include "ucadf/tdm_signal_sim.hpp"

namespace ucadf {

// Calibrate-then-test protocol driven by `sweep`: probes every
// calibration_spacing_deg, then one test point every test_step_deg starting
// at test_start_deg.
struct SweepProtocol
{
    double calibration_spacing_deg = 20.0;
    double test_start_deg = 0.0;
    double test_step_deg = 10.0;
    int chunks_per_angle = 1;
    double bin_width_deg = 60.0;

    std::vector<double> calibration_angles_rad() const;
    std::vector<double> test_angles_rad() const;
    void validate() const;
};

// Everything needed to simulate a scene and run the estimator on it.
struct ScenarioConfig
{
    int n_elements = 8;
    double radius_wavelengths = 0.5;
    std::optional<double> radius_m; // overrides radius_wavelengths
    RadioConfig radio;
    TdmSchedule schedule;
    std::vector<SourceSpec> sources;

    int n_chunks = 1;
    std::vector<double> trajectory_rad; // per-chunk target azimuth; overrides n_chunks

    ImperfectionSpec imperfections;
    std::optional<double> snapshot_snr_db; // sets noise_sigma from the first source amplitude
    double random_switch_error_deg = 0.0;  // per-port uniform in +-value, drawn once per seed
    double random_coupling = 0.0;          // I + value * CN(0, 1), drawn once per seed

    EstimatorConfig estimator;
    SweepProtocol sweep;
    std::uint64_t seed = 1;

    ArrayGeometry geometry() const;

    // Explicit imperfections plus the random parts drawn for `seed`.
    ImperfectionSpec resolve_imperfections(std::uint64_t seed) const;

    // One chunk per trajectory entry (or n_chunks copies of the sources).
    std::vector<TdmChunk> simulate() const;

    // Chunks with the target at each of the given azimuths, chunks_per_angle
    // each, using the imperfections resolved for `seed`.
    std::vector<TdmChunk> simulate_at(const std::vector<double> &azimuths_rad, int chunks_per_angle,
                                      std::uint64_t seed, std::uint64_t stream) const;

    void validate() const;
};

// Parses a YAML (or JSON) scenario document. Errors carry
// `<source_name>:<line>:<column>:` prefixes.
ScenarioConfig parse_scenario(const std::string &text, const std::string &source_name = "<scenario>");
ScenarioConfig load_scenario(const std::filesystem::path &path);

} // namespace ucadf
