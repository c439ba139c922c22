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

#include "ucadf/evaluation.hpp"

#include <cmath>
#include <limits>
#include <map>

#include "ucadf/coherence_recovery.hpp"
#include "ucadf/error.hpp"

namespace ucadf {

CalibrationMatrix calibrate_from_chunks(std::span<const TdmChunk> chunks,
                                        const std::optional<std::vector<double>> &angles_rad,
                                        const CalibrationOptions &options)
{
    if (chunks.empty())
        throw DataError("no calibration chunks");
    if (angles_rad && angles_rad->size() != chunks.size())
        throw DataError("calibration angle list has " + std::to_string(angles_rad->size()) + " entries for " +
                        std::to_string(chunks.size()) + " chunks");

    std::map<double, std::pair<CVector, int>> sums;
    for (std::size_t i = 0; i < chunks.size(); ++i)
    {
        double angle = 0.0;
        if (angles_rad)
            angle = (*angles_rad)[i];
        else if (chunks[i].truth_azimuth_rad)
            angle = *chunks[i].truth_azimuth_rad;
        else
            throw DataError("calibration chunk " + std::to_string(chunks[i].chunk_id) + " has no angle label");

        const Snapshot s = recover_snapshot(chunks[i]);
        auto [it, fresh] = sums.try_emplace(wrap_angle(angle), s.values, 1);
        if (!fresh)
        {
            it->second.first += s.values;
            it->second.second += 1;
        }
    }

    std::map<double, Snapshot> averaged;
    for (const auto &[angle, sum] : sums)
    {
        Snapshot s;
        s.values = sum.first / static_cast<double>(sum.second);
        averaged.emplace(angle, std::move(s));
    }
    return solve_calibration(measure_steering_matrix(averaged), options);
}

SweepResult evaluate_chunks(const DoaEstimator &estimator, std::span<const TdmChunk> chunks, double bin_width_deg)
{
    bin_count(bin_width_deg);
    SweepResult out;
    out.bin_width_deg = bin_width_deg;
    for (const auto &chunk : chunks)
    {
        if (!chunk.truth_azimuth_rad)
            throw DataError("chunk " + std::to_string(chunk.chunk_id) + " has no truth azimuth");
        const auto r = estimator.process(chunk);
        out.true_angles_deg.push_back(wrap_degrees(rad_to_deg(*chunk.truth_azimuth_rad)));
        if (r.estimate)
        {
            out.estimated_angles_deg.push_back(rad_to_deg(r.estimate->angle_rad));
            out.sll_values_db.push_back(r.estimate->sll_db);
        }
        else
        {
            out.estimated_angles_deg.push_back(std::numeric_limits<double>::quiet_NaN());
            out.sll_values_db.push_back(std::numeric_limits<double>::quiet_NaN());
        }
    }
    out.validate();
    return out;
}

ProtocolRun run_protocol(const ScenarioConfig &config, std::uint64_t seed)
{
    config.validate();
    const auto &sweep = config.sweep;
    const auto cal_chunks = config.simulate_at(sweep.calibration_angles_rad(), sweep.chunks_per_angle, seed, 1);
    const auto test_chunks = config.simulate_at(sweep.test_angles_rad(), sweep.chunks_per_angle, seed, 2);

    ProtocolRun run;
    run.seed = seed;
    run.calibration = calibrate_from_chunks(cal_chunks);
    const DoaEstimator estimator(run.calibration, config.estimator);
    run.result = evaluate_chunks(estimator, test_chunks, sweep.bin_width_deg);
    return run;
}

std::vector<ProtocolRun> run_sweep(const ScenarioConfig &config, int n_seeds)
{
    if (n_seeds < 1)
        throw ConfigError("seed count must be positive");
    std::vector<ProtocolRun> runs;
    runs.reserve(static_cast<std::size_t>(n_seeds));
    for (int i = 0; i < n_seeds; ++i)
        runs.push_back(run_protocol(config, config.seed + static_cast<std::uint64_t>(i)));
    return runs;
}

} // namespace ucadf
