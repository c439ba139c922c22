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
#include <optional>
#include <span>
#include <vector>

#include "ucadf/metrics.hpp"
#include "ucadf/scenario.hpp"

namespace ucadf {

// Calibration from angle-labelled chunks. Snapshots sharing a label are
// averaged before building the steering matrix. `angles_rad`, when given,
// overrides the chunk labels one-to-one.
CalibrationMatrix calibrate_from_chunks(std::span<const TdmChunk> chunks,
                                        const std::optional<std::vector<double>> &angles_rad = std::nullopt,
                                        const CalibrationOptions &options = {});

// Runs the estimator on labelled chunks and collects truth, estimate and SLL.
SweepResult evaluate_chunks(const DoaEstimator &estimator, std::span<const TdmChunk> chunks,
                            double bin_width_deg = 60.0);

struct ProtocolRun
{
    std::uint64_t seed = 0;
    CalibrationMatrix calibration;
    SweepResult result;
};

// Simulates a calibration session and a separate test session of the same
// (seed-drawn) array, calibrates, and evaluates the test session.
ProtocolRun run_protocol(const ScenarioConfig &config, std::uint64_t seed);

// run_protocol for seeds config.seed, config.seed+1, ... in order.
std::vector<ProtocolRun> run_sweep(const ScenarioConfig &config, int n_seeds);

} // namespace ucadf
