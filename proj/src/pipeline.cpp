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

#include "ucadf/pipeline.hpp"

#include <string>

#include "ucadf/error.hpp"

namespace ucadf {

DoaEstimator::DoaEstimator(CalibrationMatrix calibration, EstimatorConfig config)
    : calibration_(std::move(calibration)), config_(config), grid_(make_angle_grid(config.grid_step_deg))
{
    if (calibration_.b_matrix.rows() == 0 || calibration_.b_matrix.rows() != calibration_.b_matrix.cols())
        throw ConfigError("calibration matrix must be square and non-empty");
    config_.smoothing.validate(n_elements());
    if (config_.min_peak_separation < 1)
        throw ConfigError("peak separation must be at least one grid step");
    if (!(config_.track_alpha > 0.0 && config_.track_alpha <= 1.0))
        throw ConfigError("tracking alpha must lie in (0, 1]");
}

MusicSpectrum DoaEstimator::spectrum_from_covariance(const CMatrix &c) const
{
    // no signal: flat spectrum without peaks
    if (c.isZero(0.0))
    {
        MusicSpectrum flat;
        flat.probe_angles_rad = grid_;
        flat.power.assign(grid_.size(), 1.0);
        return flat;
    }
    const CMatrix smoothed = smooth_covariance(c, config_.smoothing);
    const CMatrix noise = noise_subspace(smoothed, config_.smoothing.n_expected);
    // sub-array steering starts at the first virtual ULA index
    return music_spectrum(noise, grid_, virtual_first_index(n_elements()), config_.min_peak_separation);
}

ChunkEstimate DoaEstimator::process_snapshot(const Snapshot &snapshot) const
{
    ChunkEstimate out;
    out.snapshot = snapshot;
    out.virtual_snapshot = apply_calibration(calibration_, snapshot.values);
    out.spectrum = spectrum_from_covariance(covariance(out.virtual_snapshot));
    out.spectrum.chunk_id = snapshot.chunk_id;
    out.estimate = estimate_doa(out.spectrum);
    return out;
}

ChunkEstimate DoaEstimator::process(const TdmChunk &chunk) const
{
    if (chunk.schedule.n_slots != n_elements())
        throw DataError("chunk has " + std::to_string(chunk.schedule.n_slots) + " slots, calibration expects " +
                        std::to_string(n_elements()));
    return process_snapshot(recover_snapshot(chunk));
}

MusicSpectrum DoaEstimator::process_averaged(std::span<const Snapshot> snapshots) const
{
    std::vector<CVector> virt;
    virt.reserve(snapshots.size());
    for (const auto &s : snapshots)
        virt.push_back(apply_calibration(calibration_, s.values));
    MusicSpectrum spec = spectrum_from_covariance(average_covariance(virt));
    if (!snapshots.empty())
        spec.chunk_id = snapshots.back().chunk_id;
    return spec;
}

DoaTracker::DoaTracker(double alpha, double hold_threshold_db)
{
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw ConfigError("tracking alpha must lie in (0, 1]");
    state_.alpha = alpha;
    state_.hold_threshold_db = hold_threshold_db;
}

bool DoaTracker::update(const std::optional<DoaEstimate> &estimate)
{
    if (!estimate)
        return false;
    const bool held = state_.initialized && estimate->sll_db < state_.hold_threshold_db;
    state_ = track_doa(state_, estimate->angle_rad, estimate->sll_db);
    return !held;
}

} // namespace ucadf
